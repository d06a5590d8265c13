#include "dendroid/mdl_learner.h"

#include <algorithm>

#include "dendroid/discrete_stats.h"
#include "dendroid/errors.h"

namespace dendroid {

std::vector<ScoredPair> score_pairs(const DiscreteDataset& data) {
  const std::size_t n = data.num_variables();
  std::vector<ScoredPair> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      pairs.push_back({i, j, mutual_information(data, i, j),
                       mdl_threshold(data.domain_size(i), data.domain_size(j), data.num_rows())});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const ScoredPair& a, const ScoredPair& b) { return a.mi > b.mi; });
  return pairs;
}

LearnTrace learn_structure_traced(const DiscreteDataset& data) {
  std::vector<std::string> names;
  for (const auto& v : data.variables()) names.push_back(v.name);
  LearnTrace trace{DependencyForest(std::move(names)), score_pairs(data), {}, data.num_rows() < 2};
  trace.outcomes.assign(trace.queue.size(), PairOutcome::kUnvisited);

  DisjointSets sets(data.num_variables());
  for (std::size_t q = 0; q < trace.queue.size(); ++q) {
    const auto& pair = trace.queue[q];
    if (!(pair.mi > pair.theta)) {
      trace.outcomes[q] = PairOutcome::kBelowThreshold;
      break;
    }
    if (sets.unite(pair.i, pair.j)) {
      trace.forest.add_edge(pair.i, pair.j);
      trace.outcomes[q] = PairOutcome::kAccepted;
    } else {
      trace.outcomes[q] = PairOutcome::kSameTree;
    }
  }
  return trace;
}

DependencyForest learn_structure(const DiscreteDataset& data) {
  return learn_structure_traced(data).forest;
}

DendroidModel learn_model(const DiscreteDataset& data) {
  return fit_parameters(learn_structure(data), data);
}

DendroidModel independent_model(const DiscreteDataset& data) {
  return fit_parameters(std::span<const Arc>(), data);
}

std::vector<DependencyReportEntry> dependency_report(const DiscreteDataset& data,
                                                     double score_threshold,
                                                     const DependencyReportOptions& options) {
  const std::size_t n = data.num_variables();
  std::vector<ValueIndex> present(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& var = data.variable(i);
    auto zero = var.index_of(kAbsent);
    auto one = var.index_of(kPresent);
    if (var.size() != 2 || !zero || !one) {
      throw DataError("dependency report needs slot-view data; '" + var.name + "' is not {0, 1}");
    }
    present[i] = *one;
  }

  const double rows = static_cast<double>(data.num_rows());
  std::vector<DependencyReportEntry> report;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double joint, p_i, p_j;
      if (options.raw_frequencies) {
        std::size_t both = 0, ci = 0, cj = 0;
        for (std::size_t r = 0; r < data.num_rows(); ++r) {
          const bool xi = data.value(r, i) == present[i];
          const bool xj = data.value(r, j) == present[j];
          both += xi && xj;
          ci += xi;
          cj += xj;
        }
        joint = static_cast<double>(both) / rows;
        p_i = static_cast<double>(ci) / rows;
        p_j = static_cast<double>(cj) / rows;
      } else {
        const JointTable t = ele_joint(data, i, j);
        joint = t.at(present[i], present[j]);
        p_i = t.marginal_i[present[i]];
        p_j = t.marginal_j[present[j]];
      }
      const bool positive = joint > p_i * p_j;
      double score = joint;
      if (options.conditional) score = p_j > 0.0 ? joint / p_j : 0.0;
      if (positive && score > score_threshold) {
        report.push_back({i, j, data.variable(i).name, data.variable(j).name, score, positive});
      }
    }
  }
  std::stable_sort(report.begin(), report.end(),
                   [](const auto& a, const auto& b) { return a.score > b.score; });
  return report;
}

}  // namespace dendroid
