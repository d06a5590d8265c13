#ifndef DENDROID_DENDROID_MODEL_H_
#define DENDROID_DENDROID_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dendroid/dataset.h"
#include "dendroid/discrete_stats.h"
#include "dendroid/forest.h"

namespace dendroid {

// A dendroid distribution: every variable is a root or has exactly one
// parent, and the joint probability factorizes as
//
//   P(x) = prod_roots P(x_r) * prod_arcs P(x_child | x_parent).
//
// Tables are indexed by variable. A root's table is its marginal (k
// entries); a child's table is P(child | parent) stored parent-major
// (k_parent rows of k_child entries). Immutable after construction.
class DendroidModel {
 public:
  // Throws DataError if a variable has two parents, the skeleton has a
  // cycle, a table has the wrong size, an entry is not strictly positive,
  // or a distribution does not sum to 1 within 1e-9.
  DendroidModel(std::string head, std::vector<Variable> variables, std::vector<Arc> arcs,
                std::vector<std::vector<double>> tables, std::size_t sample_count);

  const std::string& head() const { return head_; }
  const std::vector<Variable>& variables() const { return variables_; }
  const Variable& variable(std::size_t i) const { return variables_.at(i); }
  std::size_t num_variables() const { return variables_.size(); }
  std::size_t sample_count() const { return sample_count_; }
  std::optional<std::size_t> find_variable(std::string_view name) const;

  std::optional<std::size_t> parent(std::size_t v) const { return parents_.at(v); }
  bool is_root(std::size_t v) const { return !parents_.at(v).has_value(); }
  // Arcs in breadth-first order from the roots; parents precede children.
  const std::vector<Arc>& arcs() const { return arcs_; }
  std::vector<std::size_t> roots() const;
  std::vector<std::size_t> children(std::size_t v) const;
  // Roots first (in variable order), then children in arc order.
  const std::vector<std::size_t>& topological_order() const { return order_; }
  DependencyForest forest() const;

  std::span<const double> table(std::size_t v) const { return tables_.at(v); }
  // P(x_v = value | x_parent = parent_value); parent_value ignored for roots.
  double conditional(std::size_t v, ValueIndex value, ValueIndex parent_value = 0) const;

  // Probability of a full assignment (one in-domain index per variable).
  double probability(std::span<const ValueIndex> row) const;
  double log2_probability(std::span<const ValueIndex> row) const;

  // Probability of a partial assignment; unassigned variables are summed out.
  double evidence_probability(std::span<const std::optional<ValueIndex>> evidence) const;
  std::vector<double> marginal(std::size_t v) const;
  // P(x_i = a, x_j = b), row-major k_i x k_j. Variables in different trees
  // yield exactly the product of their marginals.
  std::vector<double> pair_marginal(std::size_t i, std::size_t j) const;

  // Converts a name -> value mapping to a full row. Throws DataError on a
  // missing variable, unknown variable or out-of-domain value.
  std::vector<ValueIndex> encode(const std::map<std::string, std::string>& assignment) const;
  // Partial variant: unknown names and out-of-domain values still throw.
  std::vector<std::optional<ValueIndex>> encode_partial(
      const std::map<std::string, std::string>& assignment) const;

  // Free parameters: (k-1) per root plus k_parent (k_child - 1) per arc.
  std::size_t parameter_count() const;

  // Exhaustive joint distribution; throws DataError if the product of
  // domain sizes exceeds max_cells.
  JointDistribution joint_distribution(std::size_t max_cells = 1u << 20) const;

  friend bool operator==(const DendroidModel& a, const DendroidModel& b);

 private:
  std::string head_;
  std::vector<Variable> variables_;
  std::vector<std::optional<std::size_t>> parents_;
  std::vector<std::vector<double>> tables_;
  std::size_t sample_count_;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> order_;
};

// ELE-smoothed parameters for the given orientation: roots get
// (count + 0.5) / (N + 0.5 k), children get
// (count(parent=a, child=b) + 0.5) / (count(parent=a) + 0.5 k_child).
DendroidModel fit_parameters(std::span<const Arc> arcs, const DiscreteDataset& data);

// Roots the forest with root_trees, then fits. The forest's variables must be
// the dataset's variables (DataError otherwise).
DendroidModel fit_parameters(const DependencyForest& structure, const DiscreteDataset& data);

// Draws `count` rows, roots first and then children in topological order.
// Identical (model, seed, count) gives identical data.
DiscreteDataset sample(const DendroidModel& model, std::uint64_t seed, std::size_t count);

inline std::size_t parameter_count(const DendroidModel& model) { return model.parameter_count(); }

}  // namespace dendroid

#endif  // DENDROID_DENDROID_MODEL_H_
