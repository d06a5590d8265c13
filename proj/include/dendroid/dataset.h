#ifndef DENDROID_DATASET_H_
#define DENDROID_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dendroid {

// Value token marking an absent case slot.
inline constexpr std::string_view kAbsent = "0";
inline constexpr std::string_view kPresent = "1";

using ValueIndex = std::uint32_t;

// A named categorical variable with a finite, ordered domain.
struct Variable {
  std::string name;
  std::vector<std::string> domain;

  std::size_t size() const { return domain.size(); }
  std::optional<ValueIndex> index_of(std::string_view value) const;

  friend bool operator==(const Variable&, const Variable&) = default;
};

// N rows of domain indices over an ordered list of variables, all belonging
// to one head. Rows are stored row-major.
class DiscreteDataset {
 public:
  // Throws DataError unless N >= 1, every domain is non-empty, every row has
  // one in-range index per variable, and variable names are unique.
  DiscreteDataset(std::string head, std::vector<Variable> variables,
                  std::vector<ValueIndex> cells);

  const std::string& head() const { return head_; }
  const std::vector<Variable>& variables() const { return variables_; }
  const Variable& variable(std::size_t i) const { return variables_.at(i); }
  std::size_t num_variables() const { return variables_.size(); }
  std::size_t num_rows() const { return num_rows_; }
  std::size_t domain_size(std::size_t i) const { return variables_.at(i).size(); }
  std::optional<std::size_t> find_variable(std::string_view name) const;

  std::span<const ValueIndex> row(std::size_t r) const {
    return {cells_.data() + r * variables_.size(), variables_.size()};
  }
  ValueIndex value(std::size_t r, std::size_t i) const {
    return cells_[r * variables_.size() + i];
  }
  std::span<const ValueIndex> cells() const { return cells_; }

  // Rows at the given positions, same variables and domains.
  DiscreteDataset subset(std::span<const std::size_t> rows) const;

  // Counts of each value of variable i.
  std::vector<std::size_t> counts(std::size_t i) const;

  friend bool operator==(const DiscreteDataset&, const DiscreteDataset&) = default;

 private:
  std::string head_;
  std::vector<Variable> variables_;
  std::vector<ValueIndex> cells_;
  std::size_t num_rows_ = 0;
};

}  // namespace dendroid

#endif  // DENDROID_DATASET_H_
