#include "dendroid/discrete_stats.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dendroid/dendroid_model.h"
#include "dendroid/errors.h"

namespace dendroid {

JointTable ele_joint(const DiscreteDataset& data, std::size_t i, std::size_t j) {
  const std::size_t n = data.num_variables();
  if (i >= n || j >= n) throw std::invalid_argument("ele_joint: variable index out of range");
  if (i == j) throw std::invalid_argument("ele_joint: a pair needs two distinct variables");

  JointTable t;
  t.var_i = i;
  t.var_j = j;
  t.k_i = data.domain_size(i);
  t.k_j = data.domain_size(j);
  t.sample_count = data.num_rows();

  std::vector<std::size_t> counts(t.k_i * t.k_j, 0);
  for (std::size_t r = 0; r < data.num_rows(); ++r) {
    ++counts[data.value(r, i) * t.k_j + data.value(r, j)];
  }
  const double total = static_cast<double>(t.sample_count) + 0.5 * static_cast<double>(t.k_i * t.k_j);
  t.probs.resize(counts.size());
  for (std::size_t c = 0; c < counts.size(); ++c) {
    t.probs[c] = (static_cast<double>(counts[c]) + 0.5) / total;
  }
  t.marginal_i.assign(t.k_i, 0.0);
  t.marginal_j.assign(t.k_j, 0.0);
  for (std::size_t a = 0; a < t.k_i; ++a) {
    for (std::size_t b = 0; b < t.k_j; ++b) t.marginal_i[a] += t.at(a, b);
  }
  for (std::size_t b = 0; b < t.k_j; ++b) {
    for (std::size_t a = 0; a < t.k_i; ++a) t.marginal_j[b] += t.at(a, b);
  }
  return t;
}

std::vector<double> ele_marginal(const DiscreteDataset& data, std::size_t i) {
  const auto counts = data.counts(i);
  const double total = static_cast<double>(data.num_rows()) + 0.5 * static_cast<double>(counts.size());
  std::vector<double> p(counts.size());
  for (std::size_t a = 0; a < counts.size(); ++a) {
    p[a] = (static_cast<double>(counts[a]) + 0.5) / total;
  }
  return p;
}

double mutual_information(const JointTable& t) {
  // Terms are summed in sorted order so that I(i,j) and I(j,i) agree exactly.
  std::vector<double> terms;
  terms.reserve(t.probs.size());
  for (std::size_t a = 0; a < t.k_i; ++a) {
    for (std::size_t b = 0; b < t.k_j; ++b) {
      const double p = t.at(a, b);
      terms.push_back(p * std::log2(p / (t.marginal_i[a] * t.marginal_j[b])));
    }
  }
  std::sort(terms.begin(), terms.end());
  double mi = 0.0;
  for (double x : terms) mi += x;
  if (mi < 0.0) {
    if (mi < -1e-12) throw std::logic_error("mutual information is negative beyond round-off");
    mi = 0.0;
  }
  return mi;
}

double mutual_information(const DiscreteDataset& data, std::size_t i, std::size_t j) {
  return mutual_information(ele_joint(data, i, j));
}

double mdl_threshold(std::size_t k_i, std::size_t k_j, std::size_t sample_count) {
  if (sample_count <= 1 || k_i <= 1 || k_j <= 1) return 0.0;
  const double n = static_cast<double>(sample_count);
  return static_cast<double>((k_i - 1) * (k_j - 1)) * std::log2(n) / (2.0 * n);
}

double entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DataError("kl_divergence: distributions have different supports");
  double d = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] <= 0.0) continue;
    if (q[x] <= 0.0) {
      throw DataError("kl_divergence: q is zero at outcome " + std::to_string(x) + " where p is positive");
    }
    d += p[x] * std::log2(p[x] / q[x]);
  }
  return std::max(d, 0.0);
}

double kl_divergence(const JointDistribution& p, const JointDistribution& q) {
  if (p.shape != q.shape) throw DataError("kl_divergence: distributions have different supports");
  return kl_divergence(std::span<const double>(p.probs), std::span<const double>(q.probs));
}

double cross_entropy(const DendroidModel& model, const DiscreteDataset& test) {
  if (test.variables() != model.variables()) {
    throw DataError("test data variables or domains differ from the model's");
  }
  double total = 0.0;
  for (std::size_t r = 0; r < test.num_rows(); ++r) total -= model.log2_probability(test.row(r));
  return total / static_cast<double>(test.num_rows());
}

double perplexity(const DendroidModel& model, const DiscreteDataset& test) {
  return std::exp2(cross_entropy(model, test));
}

}  // namespace dendroid
