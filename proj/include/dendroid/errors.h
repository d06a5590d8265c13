#ifndef DENDROID_ERRORS_H_
#define DENDROID_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dendroid {

// Malformed input text (case-frame files, model files, tuple files).
// line() is 1-based; 0 when the error is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line == 0 ? message
                                     : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a data contract: mismatched variables,
// out-of-domain values, infeasible requests.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dendroid

#endif  // DENDROID_ERRORS_H_
