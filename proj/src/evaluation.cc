#include "dendroid/evaluation.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "dendroid/discrete_stats.h"
#include "dendroid/errors.h"
#include "dendroid/mdl_learner.h"
#include "dendroid/random.h"

namespace dendroid {

std::vector<std::vector<std::size_t>> fold_partition(std::size_t rows, std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw DataError("cross validation needs at least 2 folds");
  if (folds > rows) {
    throw DataError("cannot split " + std::to_string(rows) + " rows into " + std::to_string(folds) + " folds");
  }
  std::vector<std::size_t> order(rows);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = rows; i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);

  std::vector<std::vector<std::size_t>> out(folds);
  for (std::size_t f = 0; f < folds; ++f) {
    out[f].assign(order.begin() + static_cast<std::ptrdiff_t>(f * rows / folds),
                  order.begin() + static_cast<std::ptrdiff_t>((f + 1) * rows / folds));
  }
  return out;
}

CrossValidationResult cross_validate(const DiscreteDataset& data, std::size_t folds, std::uint64_t seed) {
  return cross_validate(data, folds, seed, learn_model, independent_model);
}

CrossValidationResult cross_validate(const DiscreteDataset& data, std::size_t folds, std::uint64_t seed,
                                     const Learner& candidate, const Learner& baseline) {
  const auto parts = fold_partition(data.num_rows(), folds, seed);
  CrossValidationResult result;
  for (std::size_t f = 0; f < parts.size(); ++f) {
    std::vector<std::size_t> train;
    for (std::size_t g = 0; g < parts.size(); ++g) {
      if (g != f) train.insert(train.end(), parts[g].begin(), parts[g].end());
    }
    std::sort(train.begin(), train.end());
    const DiscreteDataset train_set = data.subset(train);
    const DiscreteDataset test_set = data.subset(parts[f]);
    result.fold_dendroid.push_back(perplexity(candidate(train_set), test_set));
    result.fold_independent.push_back(perplexity(baseline(train_set), test_set));
  }
  const double k = static_cast<double>(parts.size());
  for (std::size_t f = 0; f < parts.size(); ++f) {
    result.dendroid_perplexity += result.fold_dendroid[f];
    result.independent_perplexity += result.fold_independent[f];
  }
  result.dendroid_perplexity /= k;
  result.independent_perplexity /= k;
  result.reduction_percent =
      (result.independent_perplexity - result.dendroid_perplexity) / result.independent_perplexity * 100.0;
  return result;
}

double description_length(const DependencyForest& forest, const DiscreteDataset& data) {
  if (forest.num_variables() != data.num_variables()) {
    throw DataError("forest and data have different variables");
  }
  const double n_rows = static_cast<double>(data.num_rows());
  double data_bits = 0.0;
  double params = 0.0;
  for (std::size_t i = 0; i < data.num_variables(); ++i) {
    data_bits += n_rows * entropy(ele_marginal(data, i));
    params += static_cast<double>(data.domain_size(i) - 1);
  }
  for (const auto& e : forest.edges()) {
    data_bits -= n_rows * mutual_information(data, e.a, e.b);
    params += static_cast<double>((data.domain_size(e.a) - 1) * (data.domain_size(e.b) - 1));
  }
  return data_bits + std::log2(n_rows) / 2.0 * params;
}

DependencyForest brute_force_mdl(const DiscreteDataset& data) {
  if (data.num_variables() > 5) throw DataError("brute_force_mdl supports at most 5 variables");
  std::vector<std::string> names;
  for (const auto& v : data.variables()) names.push_back(v.name);
  auto candidates = enumerate_forests(names);

  std::size_t best = 0;
  double best_dl = description_length(candidates[0], data);
  for (std::size_t c = 1; c < candidates.size(); ++c) {
    const double dl = description_length(candidates[c], data);
    const double tol = 1e-9 * std::max(1.0, std::abs(best_dl));
    bool better = dl < best_dl - tol;
    if (!better && std::abs(dl - best_dl) <= tol) {
      const auto& cur = candidates[c];
      const auto& inc = candidates[best];
      better = cur.num_edges() < inc.num_edges() ||
               (cur.num_edges() == inc.num_edges() && cur.edges() < inc.edges());
    }
    if (better) {
      best = c;
      best_dl = dl;
    }
  }
  return candidates[best];
}

DendroidModel make_random_dendroid(std::size_t n, std::size_t k, std::size_t edges, std::uint64_t seed,
                                   const RandomModelOptions& options) {
  if (n == 0 || k == 0) throw DataError("random model needs n >= 1 and k >= 1");
  if (edges > n - 1) {
    throw DataError("a forest on " + std::to_string(n) + " variables has at most " + std::to_string(n - 1) +
                    " edges");
  }
  if (!(options.strength >= 0.0 && options.strength < 1.0)) throw DataError("strength must lie in [0, 1)");
  Rng rng(seed);

  std::vector<Variable> variables;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    Variable v{"x" + std::to_string(i + 1), {}};
    for (std::size_t x = 0; x < k; ++x) v.domain.push_back(std::to_string(x));
    names.push_back(v.name);
    variables.push_back(std::move(v));
  }

  std::vector<Edge> pairs;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  }
  for (std::size_t i = pairs.size(); i > 1; --i) std::swap(pairs[i - 1], pairs[rng.index(i)]);
  DependencyForest forest(names);
  DisjointSets sets(n);
  for (const auto& e : pairs) {
    if (forest.num_edges() == edges) break;
    if (sets.unite(e.a, e.b)) forest.add_edge(e.a, e.b);
  }
  const auto arcs = root_trees(forest);

  auto random_row = [&] {
    std::vector<double> row(k);
    double sum = 0.0;
    for (auto& x : row) sum += x = 0.2 + rng.uniform();
    for (auto& x : row) x /= sum;
    return row;
  };

  std::vector<std::vector<double>> tables(n);
  for (std::size_t v = 0; v < n; ++v) tables[v] = random_row();
  for (const auto& arc : arcs) {
    std::vector<std::size_t> preferred(k);
    std::iota(preferred.begin(), preferred.end(), 0);
    for (std::size_t i = k; i > 1; --i) std::swap(preferred[i - 1], preferred[rng.index(i)]);
    std::vector<double> table;
    for (std::size_t a = 0; a < k; ++a) {
      auto row = random_row();
      for (std::size_t b = 0; b < k; ++b) {
        row[b] = (1.0 - options.strength) * row[b] + (b == preferred[a % k] ? options.strength : 0.0);
      }
      table.insert(table.end(), row.begin(), row.end());
    }
    tables[arc.child] = std::move(table);
  }
  return DendroidModel(options.head, std::move(variables), arcs, std::move(tables), 0);
}

std::vector<LearningTrial> learning_trials(const DendroidModel& true_model, const std::vector<std::size_t>& sizes,
                                           std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw DataError("learning curve needs at least one trial");
  const JointDistribution truth = true_model.joint_distribution(kMaxEnumeratedCells);
  const auto true_forest = true_model.forest();
  std::vector<LearningTrial> out;
  for (std::size_t size : sizes) {
    if (size == 0) throw DataError("data sizes must be positive");
    for (std::size_t t = 0; t < trials; ++t) {
      const auto data = sample(true_model, derive_seed(seed, size, t), size);
      const auto learned = learn_model(data);
      const auto learned_forest = learned.forest();
      out.push_back({size, t, learned_forest.num_edges(),
                     kl_divergence(truth, learned.joint_distribution(kMaxEnumeratedCells)),
                     learned_forest.edges() == true_forest.edges()});
    }
  }
  return out;
}

std::vector<LearningCurveRow> summarize(const std::vector<LearningTrial>& trials, std::size_t true_edges) {
  std::vector<LearningCurveRow> rows;
  for (const auto& t : trials) {
    if (rows.empty() || rows.back().data_size != t.size) rows.push_back({t.size, 0.0, true_edges, 0.0, 0});
    auto& row = rows.back();
    row.mean_edges += static_cast<double>(t.edges);
    row.mean_kl += t.kl;
    ++row.trials;
  }
  for (auto& row : rows) {
    row.mean_edges /= static_cast<double>(row.trials);
    row.mean_kl /= static_cast<double>(row.trials);
  }
  return rows;
}

std::vector<LearningCurveRow> learning_curve(const DendroidModel& true_model, const std::vector<std::size_t>& sizes,
                                             std::size_t trials, std::uint64_t seed) {
  return summarize(learning_trials(true_model, sizes, trials, seed), true_model.arcs().size());
}

std::string learning_curve_csv(const std::vector<LearningCurveRow>& rows) {
  auto fixed = [](double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 6);
    return std::string(buf, res.ptr);
  };
  std::string out = "size,mean_edges,true_edges,mean_kl,trials\n";
  for (const auto& r : rows) {
    out += std::to_string(r.data_size) + "," + fixed(r.mean_edges) + "," + std::to_string(r.true_edges) + "," +
           fixed(r.mean_kl) + "," + std::to_string(r.trials) + "\n";
  }
  return out;
}

}  // namespace dendroid
