#include "dendroid/dataset.h"

#include <algorithm>
#include <set>

#include "dendroid/errors.h"

namespace dendroid {

std::optional<ValueIndex> Variable::index_of(std::string_view value) const {
  auto it = std::find(domain.begin(), domain.end(), value);
  if (it == domain.end()) return std::nullopt;
  return static_cast<ValueIndex>(it - domain.begin());
}

DiscreteDataset::DiscreteDataset(std::string head, std::vector<Variable> variables,
                                 std::vector<ValueIndex> cells)
    : head_(std::move(head)), variables_(std::move(variables)), cells_(std::move(cells)) {
  if (variables_.empty()) throw DataError("dataset has no variables");
  std::set<std::string_view> names;
  for (const auto& v : variables_) {
    if (v.domain.empty()) throw DataError("variable '" + v.name + "' has an empty domain");
    if (!names.insert(v.name).second) throw DataError("duplicate variable '" + v.name + "'");
  }
  const std::size_t n = variables_.size();
  if (cells_.empty() || cells_.size() % n != 0) {
    throw DataError("dataset for '" + head_ + "' must hold N >= 1 complete rows");
  }
  num_rows_ = cells_.size() / n;
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    if (cells_[c] >= variables_[c % n].size()) {
      throw DataError("row " + std::to_string(c / n) + ": value index out of domain for '" +
                      variables_[c % n].name + "'");
    }
  }
}

std::optional<std::size_t> DiscreteDataset::find_variable(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == name) return i;
  }
  return std::nullopt;
}

DiscreteDataset DiscreteDataset::subset(std::span<const std::size_t> rows) const {
  std::vector<ValueIndex> cells;
  cells.reserve(rows.size() * variables_.size());
  for (std::size_t r : rows) {
    if (r >= num_rows_) throw std::out_of_range("row index out of range");
    auto src = row(r);
    cells.insert(cells.end(), src.begin(), src.end());
  }
  return DiscreteDataset(head_, variables_, std::move(cells));
}

std::vector<std::size_t> DiscreteDataset::counts(std::size_t i) const {
  std::vector<std::size_t> out(domain_size(i), 0);
  for (std::size_t r = 0; r < num_rows_; ++r) ++out[value(r, i)];
  return out;
}

}  // namespace dendroid
