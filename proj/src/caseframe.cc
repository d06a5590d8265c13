#include "dendroid/caseframe.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "dendroid/errors.h"

namespace dendroid {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_delimiter(char c) { return is_space(c) || c == '(' || c == ')'; }

// Tokens appear verbatim in model files, so the characters that structure
// those files are excluded.
void check_token(std::string_view token, std::size_t line) {
  for (char c : token) {
    if (c == '[' || c == ']' || c == '=' || c == '|') {
      throw ParseError(line, "reserved character '" + std::string(1, c) + "' in token '" +
                                 std::string(token) + "'");
    }
  }
  const bool opens = token.front() == '<';
  const bool closes = token.back() == '>';
  const auto inner_brackets = token.size() > 2
                                  ? token.substr(1, token.size() - 2).find_first_of("<>")
                                  : std::string_view::npos;
  if (opens || closes) {
    if (!(opens && closes) || token.size() < 3 || inner_brackets != std::string_view::npos) {
      throw ParseError(line, "malformed class token '" + std::string(token) + "'");
    }
  } else if (token.find_first_of("<>") != std::string_view::npos) {
    throw ParseError(line, "malformed class token '" + std::string(token) + "'");
  }
}

class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  CaseFrame parse() {
    CaseFrame frame;
    expect('(');
    skip_space();
    if (at_end() || peek() == '(' || peek() == ')') fail("missing head");
    frame.head = token();
    std::set<std::string> seen;
    for (;;) {
      skip_space();
      if (at_end()) fail("unbalanced parentheses: frame is not closed");
      if (peek() == ')') {
        ++pos_;
        break;
      }
      if (peek() != '(') fail("expected '(' to open a slot, found '" + std::string(1, peek()) + "'");
      ++pos_;
      skip_space();
      if (at_end()) fail("unbalanced parentheses: slot is not closed");
      if (peek() == '(' || peek() == ')') fail("missing slot name");
      SlotFiller filler;
      filler.slot = token();
      skip_space();
      if (at_end()) fail("unbalanced parentheses: slot is not closed");
      if (peek() == ')') fail("empty value for slot '" + filler.slot + "'");
      if (peek() == '(') fail("nested frame in slot '" + filler.slot + "' is not supported");
      filler.value = token();
      if (filler.value == kAbsent) {
        fail("value '0' is reserved for absent slots (slot '" + filler.slot + "')");
      }
      skip_space();
      if (at_end()) fail("unbalanced parentheses: slot is not closed");
      if (peek() != ')') fail("slot '" + filler.slot + "' has more than one value");
      ++pos_;
      if (!seen.insert(filler.slot).second) fail("duplicate slot '" + filler.slot + "'");
      frame.slots.push_back(std::move(filler));
    }
    skip_space();
    if (!at_end()) {
      if (peek() == ')') fail("unbalanced parentheses: unexpected ')'");
      fail("unexpected text after frame");
    }
    return frame;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_space() {
    while (!at_end() && is_space(peek())) ++pos_;
  }
  void expect(char c) {
    skip_space();
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string token() {
    const std::size_t start = pos_;
    while (!at_end() && !is_delimiter(peek())) ++pos_;
    auto tok = text_.substr(start, pos_ - start);
    check_token(tok, line_);
    return std::string(tok);
  }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, message); }

  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<CaseFrame> parse_case_frames(std::istream& in) {
  std::vector<CaseFrame> frames;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto first = std::find_if_not(line.begin(), line.end(), is_space);
    if (first == line.end() || *first == '#') continue;
    frames.push_back(LineParser(line, number).parse());
  }
  return frames;
}

std::vector<CaseFrame> parse_case_frames(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_case_frames(in);
}

std::string to_string(const CaseFrame& frame) {
  std::string out = "(" + frame.head;
  for (const auto& s : frame.slots) out += " (" + s.slot + " " + s.value + ")";
  out += ")";
  return out;
}

std::map<std::string, std::vector<CaseFrame>> group_by_head(std::span<const CaseFrame> frames) {
  std::map<std::string, std::vector<CaseFrame>> groups;
  for (const auto& f : frames) groups[f.head].push_back(f);
  return groups;
}

DiscreteDataset project(std::span<const CaseFrame> frames, View view,
                        const ProjectionOptions& options) {
  if (frames.empty()) throw DataError("cannot project an empty list of case frames");
  const std::string& head = frames.front().head;

  std::vector<std::string> slots = options.slot_inventory;
  for (const auto& f : frames) {
    if (f.head != head) {
      throw DataError("mixed heads in projection: '" + head + "' and '" + f.head + "'");
    }
    for (const auto& s : f.slots) {
      if (std::find(slots.begin(), slots.end(), s.slot) == slots.end()) slots.push_back(s.slot);
    }
  }
  if (slots.empty()) throw DataError("head '" + head + "' has no slots");

  auto filler_of = [](const CaseFrame& f, const std::string& slot) -> std::string_view {
    for (const auto& s : f.slots) {
      if (s.slot == slot) return s.value;
    }
    return kAbsent;
  };

  std::vector<Variable> variables;
  variables.reserve(slots.size());
  for (const auto& slot : slots) {
    Variable v{slot, {}};
    if (view == View::kSlot) {
      v.domain = {std::string(kAbsent), std::string(kPresent)};
    } else {
      for (const auto& f : frames) {
        auto value = filler_of(f, slot);
        if (!v.index_of(value)) v.domain.emplace_back(value);
      }
    }
    variables.push_back(std::move(v));
  }

  std::vector<ValueIndex> cells;
  cells.reserve(frames.size() * slots.size());
  for (const auto& f : frames) {
    for (std::size_t i = 0; i < slots.size(); ++i) {
      auto value = filler_of(f, slots[i]);
      if (view == View::kSlot) {
        cells.push_back(value == kAbsent ? 0 : 1);
      } else {
        cells.push_back(*variables[i].index_of(value));
      }
    }
  }
  return DiscreteDataset(head, std::move(variables), std::move(cells));
}

}  // namespace dendroid
