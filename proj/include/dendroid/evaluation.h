#ifndef DENDROID_EVALUATION_H_
#define DENDROID_EVALUATION_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dendroid/dataset.h"
#include "dendroid/dendroid_model.h"
#include "dendroid/forest.h"

namespace dendroid {

using Learner = std::function<DendroidModel(const DiscreteDataset&)>;

struct CrossValidationResult {
  double dendroid_perplexity = 0.0;     // mean over folds
  double independent_perplexity = 0.0;  // mean over folds
  double reduction_percent = 0.0;       // (independent - dendroid) / independent * 100
  std::vector<double> fold_dendroid;
  std::vector<double> fold_independent;
};

// Seeded shuffle of 0..rows-1 cut into `folds` contiguous, near-equal parts
// (fold f covers positions [f*rows/folds, (f+1)*rows/folds)).
std::vector<std::vector<std::size_t>> fold_partition(std::size_t rows, std::size_t folds, std::uint64_t seed);

// K-fold test perplexity of learn_model against independent_model. Domains
// come from the full dataset, so held-out values are covered by smoothing.
// Throws DataError unless 2 <= folds <= N.
CrossValidationResult cross_validate(const DiscreteDataset& data, std::size_t folds, std::uint64_t seed);

// Same, with explicit learners for the candidate and baseline arms.
CrossValidationResult cross_validate(const DiscreteDataset& data, std::size_t folds, std::uint64_t seed,
                                     const Learner& candidate, const Learner& baseline);

// Two-part code length in bits:
//
//   DL = N sum_i H(X_i) - N sum_edges I(X_i, X_j) + (log2 N / 2) * params
//   params = sum_i (k_i - 1) + sum_edges (k_i - 1)(k_j - 1)
//
// with entropies and mutual information taken from ELE-smoothed tables.
// params equals the parameter count of any rooting of the forest, and adding
// an edge (i, j) changes DL by exactly -N (I(X_i, X_j) - theta(i, j)), where
// theta is the learner's edge threshold. Minimizing DL over forests is thus
// a maximum-weight forest problem with weights I - theta, which the greedy
// learner solves whenever theta is the same for every pair (equal domain
// sizes).
double description_length(const DependencyForest& forest, const DiscreteDataset& data);

// Exhaustive minimizer of description_length over all labeled forests.
// Ties (within 1e-9 relative) go to fewer edges, then the lexicographically
// smaller edge list. Throws DataError for more than 5 variables.
DependencyForest brute_force_mdl(const DiscreteDataset& data);

struct RandomModelOptions {
  // Weight in [0, 1) on each conditional row's preferred child value;
  // higher values push rows further from uniform.
  double strength = 0.6;
  std::string head = "synthetic";
};

// Random dendroid over variables x1..xn with values "0".."k-1" and exactly
// `edges` arcs. Root tables are random and bounded away from zero;
// conditional rows mix a random row with a point mass on a value that
// differs between parent values. Throws DataError unless edges <= n - 1.
DendroidModel make_random_dendroid(std::size_t n, std::size_t k, std::size_t edges, std::uint64_t seed,
                                   const RandomModelOptions& options = {});

struct LearningTrial {
  std::size_t size = 0;
  std::size_t trial = 0;
  std::size_t edges = 0;
  double kl = 0.0;  // KL(true || learned), bits
  bool structure_recovered = false;
};

struct LearningCurveRow {
  std::size_t data_size = 0;
  double mean_edges = 0.0;
  std::size_t true_edges = 0;
  double mean_kl = 0.0;
  std::size_t trials = 0;
};

// Limit on the joint support for exact KL by enumeration.
inline constexpr std::size_t kMaxEnumeratedCells = 4096;

// For each size and trial: sample from the true model, learn, and compare.
// Trial seeds derive from (seed, size, trial).
std::vector<LearningTrial> learning_trials(const DendroidModel& true_model, const std::vector<std::size_t>& sizes,
                                           std::size_t trials, std::uint64_t seed);

std::vector<LearningCurveRow> learning_curve(const DendroidModel& true_model, const std::vector<std::size_t>& sizes,
                                             std::size_t trials, std::uint64_t seed);

std::vector<LearningCurveRow> summarize(const std::vector<LearningTrial>& trials, std::size_t true_edges);

// CSV with header "size,mean_edges,true_edges,mean_kl,trials".
std::string learning_curve_csv(const std::vector<LearningCurveRow>& rows);

}  // namespace dendroid

#endif  // DENDROID_EVALUATION_H_
