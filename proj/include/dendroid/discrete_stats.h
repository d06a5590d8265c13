#ifndef DENDROID_DISCRETE_STATS_H_
#define DENDROID_DISCRETE_STATS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "dendroid/dataset.h"

namespace dendroid {

class DendroidModel;

// Pairwise distribution of two variables estimated with the Expected
// Likelihood Estimator: every cell count gets +0.5 before normalizing, so all
// entries are strictly positive. Marginals are row/column sums of the
// smoothed table.
struct JointTable {
  std::size_t var_i = 0;
  std::size_t var_j = 0;
  std::size_t k_i = 0;
  std::size_t k_j = 0;
  std::vector<double> probs;  // row-major k_i x k_j
  std::vector<double> marginal_i;
  std::vector<double> marginal_j;
  std::size_t sample_count = 0;

  double at(std::size_t a, std::size_t b) const { return probs[a * k_j + b]; }
};

// Throws std::invalid_argument when i == j or either index is out of range.
JointTable ele_joint(const DiscreteDataset& data, std::size_t i, std::size_t j);

// ELE-smoothed marginal of one variable: (count + 0.5) / (N + 0.5 k).
std::vector<double> ele_marginal(const DiscreteDataset& data, std::size_t i);

// Mutual information in bits of the smoothed table. Invariant under
// transposing the table; round-off below zero is clamped to 0.
double mutual_information(const JointTable& table);

// Convenience: mutual_information(ele_joint(data, i, j)).
double mutual_information(const DiscreteDataset& data, std::size_t i, std::size_t j);

// MDL edge threshold (k_i - 1)(k_j - 1) log2(N) / (2N), in bits.
double mdl_threshold(std::size_t k_i, std::size_t k_j, std::size_t sample_count);

// Shannon entropy in bits; zero-probability entries contribute nothing.
double entropy(std::span<const double> probs);

// A full joint distribution over the cartesian product of domain sizes in
// `shape`, flattened row-major (last variable fastest).
struct JointDistribution {
  std::vector<std::size_t> shape;
  std::vector<double> probs;
};

// D(p || q) in bits. Throws DataError on a shape mismatch or where q is zero
// but p is positive.
double kl_divergence(std::span<const double> p, std::span<const double> q);
double kl_divergence(const JointDistribution& p, const JointDistribution& q);

// Cross-entropy of the rows of `test` under `model`, in bits per row.
double cross_entropy(const DendroidModel& model, const DiscreteDataset& test);

// 2 ^ cross_entropy(model, test). `test` must carry the model's variables
// and domains; otherwise DataError.
double perplexity(const DendroidModel& model, const DiscreteDataset& test);

}  // namespace dendroid

#endif  // DENDROID_DISCRETE_STATS_H_
