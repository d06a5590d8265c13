#include "dendroid/dendroid_model.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "dendroid/errors.h"
#include "dendroid/random.h"

namespace dendroid {
namespace {

constexpr double kNormalizationTolerance = 1e-9;

void check_distribution(std::span<const double> p, const std::string& what) {
  double sum = 0.0;
  for (double x : p) {
    if (!std::isfinite(x) || x <= 0.0) {
      throw DataError(what + " has a non-positive or non-finite entry");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    throw DataError(what + " sums to " + std::to_string(sum) + ", not 1");
  }
}

std::size_t draw(Rng& rng, std::span<const double> p) {
  double u = rng.uniform();
  for (std::size_t x = 0; x + 1 < p.size(); ++x) {
    if (u < p[x]) return x;
    u -= p[x];
  }
  return p.size() - 1;
}

}  // namespace

DendroidModel::DendroidModel(std::string head, std::vector<Variable> variables,
                             std::vector<Arc> arcs, std::vector<std::vector<double>> tables,
                             std::size_t sample_count)
    : head_(std::move(head)),
      variables_(std::move(variables)),
      parents_(variables_.size()),
      tables_(std::move(tables)),
      sample_count_(sample_count) {
  const std::size_t n = variables_.size();
  if (n == 0) throw DataError("model has no variables");
  for (const auto& v : variables_) {
    if (v.domain.empty()) throw DataError("variable '" + v.name + "' has an empty domain");
  }
  for (const auto& arc : arcs) {
    if (arc.parent >= n || arc.child >= n) throw DataError("arc endpoint out of range");
    if (arc.parent == arc.child) throw DataError("self-loop on '" + variables_[arc.parent].name + "'");
    if (parents_[arc.child]) {
      throw DataError("variable '" + variables_[arc.child].name + "' has two parents");
    }
    parents_[arc.child] = arc.parent;
  }

  std::vector<std::vector<std::size_t>> kids(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (parents_[v]) kids[*parents_[v]].push_back(v);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!parents_[v]) order_.push_back(v);
  }
  std::deque<std::size_t> queue(order_.begin(), order_.end());
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t c : kids[u]) {
      arcs_.push_back({u, c});
      order_.push_back(c);
      queue.push_back(c);
    }
  }
  if (order_.size() != n) throw DataError("arcs contain a cycle");

  if (tables_.size() != n) throw DataError("expected one table per variable");
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t k = variables_[v].size();
    if (!parents_[v]) {
      if (tables_[v].size() != k) throw DataError("root table size mismatch for '" + variables_[v].name + "'");
      check_distribution(tables_[v], "P(" + variables_[v].name + ")");
      continue;
    }
    const std::size_t kp = variables_[*parents_[v]].size();
    if (tables_[v].size() != kp * k) {
      throw DataError("conditional table size mismatch for '" + variables_[v].name + "'");
    }
    for (std::size_t a = 0; a < kp; ++a) {
      check_distribution(std::span<const double>(tables_[v]).subspan(a * k, k),
                         "P(" + variables_[v].name + "|" + variables_[*parents_[v]].name + "=" +
                             variables_[*parents_[v]].domain[a] + ")");
    }
  }
}

std::optional<std::size_t> DendroidModel::find_variable(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> DendroidModel::roots() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < parents_.size(); ++v) {
    if (!parents_[v]) out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> DendroidModel::children(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < parents_.size(); ++c) {
    if (parents_[c] == v) out.push_back(c);
  }
  return out;
}

DependencyForest DendroidModel::forest() const {
  std::vector<std::string> names;
  for (const auto& v : variables_) names.push_back(v.name);
  DependencyForest f(std::move(names));
  for (const auto& arc : arcs_) f.add_edge(arc.parent, arc.child);
  return f;
}

double DendroidModel::conditional(std::size_t v, ValueIndex value, ValueIndex parent_value) const {
  const std::size_t k = variables_[v].size();
  if (!parents_[v]) return tables_[v][value];
  return tables_[v][parent_value * k + value];
}

double DendroidModel::probability(std::span<const ValueIndex> row) const {
  if (row.size() != variables_.size()) throw DataError("assignment does not cover every variable");
  double p = 1.0;
  for (std::size_t v : order_) {
    if (row[v] >= variables_[v].size()) throw DataError("value out of domain for '" + variables_[v].name + "'");
    p *= parents_[v] ? conditional(v, row[v], row[*parents_[v]]) : conditional(v, row[v]);
  }
  return p;
}

double DendroidModel::log2_probability(std::span<const ValueIndex> row) const {
  if (row.size() != variables_.size()) throw DataError("assignment does not cover every variable");
  double lp = 0.0;
  for (std::size_t v : order_) {
    if (row[v] >= variables_[v].size()) throw DataError("value out of domain for '" + variables_[v].name + "'");
    lp += std::log2(parents_[v] ? conditional(v, row[v], row[*parents_[v]]) : conditional(v, row[v]));
  }
  return lp;
}

double DendroidModel::evidence_probability(std::span<const std::optional<ValueIndex>> evidence) const {
  const std::size_t n = variables_.size();
  if (evidence.size() != n) throw DataError("evidence must list every variable (possibly unassigned)");

  std::vector<std::vector<double>> lambda(n);
  std::vector<std::size_t> tree_root(n);
  std::vector<bool> tree_has_evidence(n, false);
  for (std::size_t v : order_) {
    tree_root[v] = parents_[v] ? tree_root[*parents_[v]] : v;
    const std::size_t k = variables_[v].size();
    if (evidence[v]) {
      if (*evidence[v] >= k) throw DataError("value out of domain for '" + variables_[v].name + "'");
      lambda[v].assign(k, 0.0);
      lambda[v][*evidence[v]] = 1.0;
      tree_has_evidence[tree_root[v]] = true;
    } else {
      lambda[v].assign(k, 1.0);
    }
  }
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    const std::size_t v = *it;
    if (!parents_[v] || !tree_has_evidence[tree_root[v]]) continue;
    const std::size_t p = *parents_[v];
    const std::size_t k = variables_[v].size();
    for (std::size_t a = 0; a < variables_[p].size(); ++a) {
      double msg = 0.0;
      for (std::size_t b = 0; b < k; ++b) msg += tables_[v][a * k + b] * lambda[v][b];
      lambda[p][a] *= msg;
    }
  }
  // Trees without evidence sum to one and are skipped.
  double total = 1.0;
  for (std::size_t v = 0; v < n; ++v) {
    if (parents_[v] || !tree_has_evidence[v]) continue;
    double s = 0.0;
    for (std::size_t x = 0; x < variables_[v].size(); ++x) s += tables_[v][x] * lambda[v][x];
    total *= s;
  }
  return total;
}

std::vector<double> DendroidModel::marginal(std::size_t v) const {
  std::vector<std::optional<ValueIndex>> evidence(variables_.size());
  std::vector<double> out(variables_.at(v).size());
  for (std::size_t x = 0; x < out.size(); ++x) {
    evidence[v] = static_cast<ValueIndex>(x);
    out[x] = evidence_probability(evidence);
  }
  return out;
}

std::vector<double> DendroidModel::pair_marginal(std::size_t i, std::size_t j) const {
  if (i == j) throw std::invalid_argument("pair_marginal needs two distinct variables");
  const std::size_t ki = variables_.at(i).size();
  const std::size_t kj = variables_.at(j).size();
  std::vector<std::optional<ValueIndex>> evidence(variables_.size());
  std::vector<double> out(ki * kj);
  for (std::size_t a = 0; a < ki; ++a) {
    for (std::size_t b = 0; b < kj; ++b) {
      evidence[i] = static_cast<ValueIndex>(a);
      evidence[j] = static_cast<ValueIndex>(b);
      out[a * kj + b] = evidence_probability(evidence);
    }
  }
  return out;
}

std::vector<std::optional<ValueIndex>> DendroidModel::encode_partial(
    const std::map<std::string, std::string>& assignment) const {
  std::vector<std::optional<ValueIndex>> out(variables_.size());
  for (const auto& [name, value] : assignment) {
    auto v = find_variable(name);
    if (!v) throw DataError("model '" + head_ + "' has no variable '" + name + "'");
    auto idx = variables_[*v].index_of(value);
    if (!idx) throw DataError("value '" + value + "' is outside the domain of '" + name + "'");
    out[*v] = *idx;
  }
  return out;
}

std::vector<ValueIndex> DendroidModel::encode(const std::map<std::string, std::string>& assignment) const {
  auto partial = encode_partial(assignment);
  std::vector<ValueIndex> row(partial.size());
  for (std::size_t v = 0; v < partial.size(); ++v) {
    if (!partial[v]) throw DataError("assignment is missing variable '" + variables_[v].name + "'");
    row[v] = *partial[v];
  }
  return row;
}

std::size_t DendroidModel::parameter_count() const {
  std::size_t count = 0;
  for (std::size_t v = 0; v < variables_.size(); ++v) {
    const std::size_t k = variables_[v].size();
    count += parents_[v] ? variables_[*parents_[v]].size() * (k - 1) : k - 1;
  }
  return count;
}

JointDistribution DendroidModel::joint_distribution(std::size_t max_cells) const {
  JointDistribution joint;
  std::size_t cells = 1;
  for (const auto& v : variables_) {
    joint.shape.push_back(v.size());
    if (cells > max_cells / v.size()) throw DataError("joint distribution too large to enumerate");
    cells *= v.size();
  }
  joint.probs.resize(cells);
  std::vector<ValueIndex> row(variables_.size(), 0);
  for (std::size_t c = 0; c < cells; ++c) {
    joint.probs[c] = probability(row);
    for (std::size_t v = variables_.size(); v-- > 0;) {
      if (++row[v] < variables_[v].size()) break;
      row[v] = 0;
    }
  }
  return joint;
}

bool operator==(const DendroidModel& a, const DendroidModel& b) {
  return a.head_ == b.head_ && a.variables_ == b.variables_ && a.parents_ == b.parents_ &&
         a.tables_ == b.tables_ && a.sample_count_ == b.sample_count_;
}

DendroidModel fit_parameters(std::span<const Arc> arcs, const DiscreteDataset& data) {
  const std::size_t n = data.num_variables();
  std::vector<std::optional<std::size_t>> parent(n);
  for (const auto& arc : arcs) {
    if (arc.parent >= n || arc.child >= n) throw DataError("arc endpoint out of range");
    parent[arc.child] = arc.parent;
  }
  std::vector<std::vector<double>> tables(n);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t k = data.domain_size(v);
    if (!parent[v]) {
      tables[v] = ele_marginal(data, v);
      continue;
    }
    const std::size_t p = *parent[v];
    const std::size_t kp = data.domain_size(p);
    std::vector<double> counts(kp * k, 0.0);
    std::vector<double> parent_counts(kp, 0.0);
    for (std::size_t r = 0; r < data.num_rows(); ++r) {
      counts[data.value(r, p) * k + data.value(r, v)] += 1.0;
      parent_counts[data.value(r, p)] += 1.0;
    }
    tables[v].resize(kp * k);
    for (std::size_t a = 0; a < kp; ++a) {
      const double denom = parent_counts[a] + 0.5 * static_cast<double>(k);
      for (std::size_t b = 0; b < k; ++b) tables[v][a * k + b] = (counts[a * k + b] + 0.5) / denom;
    }
  }
  return DendroidModel(data.head(), data.variables(), std::vector<Arc>(arcs.begin(), arcs.end()),
                       std::move(tables), data.num_rows());
}

DendroidModel fit_parameters(const DependencyForest& structure, const DiscreteDataset& data) {
  if (structure.num_variables() != data.num_variables()) {
    throw DataError("structure and data have different variables");
  }
  for (std::size_t i = 0; i < data.num_variables(); ++i) {
    if (structure.variables()[i] != data.variable(i).name) {
      throw DataError("structure variable '" + structure.variables()[i] + "' does not match data variable '" +
                      data.variable(i).name + "'");
    }
  }
  const auto arcs = root_trees(structure);
  return fit_parameters(arcs, data);
}

DiscreteDataset sample(const DendroidModel& model, std::uint64_t seed, std::size_t count) {
  if (count == 0) throw std::invalid_argument("sample count must be at least 1");
  Rng rng(seed);
  const std::size_t n = model.num_variables();
  std::vector<ValueIndex> cells(count * n);
  for (std::size_t r = 0; r < count; ++r) {
    ValueIndex* row = cells.data() + r * n;
    for (std::size_t v : model.topological_order()) {
      const std::size_t k = model.variable(v).size();
      auto table = model.table(v);
      if (auto p = model.parent(v)) table = table.subspan(row[*p] * k, k);
      row[v] = static_cast<ValueIndex>(draw(rng, table));
    }
  }
  return DiscreteDataset(model.head(), model.variables(), std::move(cells));
}

}  // namespace dendroid
