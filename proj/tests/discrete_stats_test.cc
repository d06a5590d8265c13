#include "dendroid/discrete_stats.h"

#include <cmath>
#include <map>

#include "doctest.h"
#include "dendroid/dendroid_model.h"
#include "dendroid/errors.h"
#include "test_util.h"

namespace dendroid {
namespace {

using testing::fly;
using testing::make_dataset;
using testing::random_dataset;

// Mutual information straight from counts, without the JointTable path.
double oracle_mi(const DiscreteDataset& d, std::size_t i, std::size_t j) {
  const std::size_t ki = d.domain_size(i), kj = d.domain_size(j);
  std::map<std::pair<std::size_t, std::size_t>, double> cnt;
  for (std::size_t r = 0; r < d.num_rows(); ++r) cnt[{d.value(r, i), d.value(r, j)}] += 1;
  const double total = static_cast<double>(d.num_rows()) + 0.5 * static_cast<double>(ki * kj);
  std::vector<double> pa(ki, 0.0), pb(kj, 0.0);
  for (std::size_t a = 0; a < ki; ++a) {
    for (std::size_t b = 0; b < kj; ++b) {
      const double p = (cnt[{a, b}] + 0.5) / total;
      pa[a] += p;
      pb[b] += p;
    }
  }
  double mi = 0.0;
  for (std::size_t a = 0; a < ki; ++a) {
    for (std::size_t b = 0; b < kj; ++b) {
      const double p = (cnt[{a, b}] + 0.5) / total;
      mi += p * std::log(p / (pa[a] * pb[b])) / std::log(2.0);
    }
  }
  return mi;
}

double mi_by_name(const DiscreteDataset& d, const char* a, const char* b) {
  return mutual_information(d, *d.find_variable(a), *d.find_variable(b));
}

TEST_CASE("ele_joint on (arg2, to) of the fly frames") {
  auto d = fly(View::kValue);
  const auto arg2 = *d.find_variable("arg2");
  const auto to = *d.find_variable("to");
  auto t = ele_joint(d, arg2, to);
  CHECK(t.k_i == 3);
  CHECK(t.k_j == 2);
  const auto& dom_arg2 = d.variable(arg2);
  const auto& dom_to = d.variable(to);
  auto at = [&](const char* x, const char* y) { return t.at(*dom_arg2.index_of(x), *dom_to.index_of(y)); };
  CHECK(at("<airplane>", "0") == doctest::Approx(5.5 / 12).epsilon(1e-12));
  CHECK(at("<company>", "0") == doctest::Approx(1.5 / 12).epsilon(1e-12));
  CHECK(at("0", "<place>") == doctest::Approx(3.5 / 12).epsilon(1e-12));
  CHECK(at("<airplane>", "<place>") == doctest::Approx(0.5 / 12).epsilon(1e-12));
  CHECK(at("0", "0") == doctest::Approx(0.5 / 12).epsilon(1e-12));
  CHECK(at("<airplane>", "0") == doctest::Approx(0.4583).epsilon(1e-3));
}

TEST_CASE("ele_joint edge cases") {
  auto balanced = make_dataset({{0, 0}, {0, 1}, {1, 0}, {1, 1}, {0, 0}, {0, 1}, {1, 0}, {1, 1}}, {2, 2});
  auto t = ele_joint(balanced, 0, 1);
  for (double p : t.probs) CHECK(p == doctest::Approx(0.25));

  auto single = make_dataset({{0, 0}, {0, 0}}, {1, 1});
  auto s = ele_joint(single, 0, 1);
  REQUIRE(s.probs.size() == 1);
  CHECK(s.probs[0] == 1.0);

  CHECK_THROWS_AS(ele_joint(balanced, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(ele_joint(balanced, 0, 2), std::invalid_argument);
}

TEST_CASE("mutual information on the fly frames") {
  auto d = fly(View::kValue);
  // Values reported for the worked example, to two decimals.
  CHECK(std::abs(mi_by_name(d, "arg2", "to") - 0.43) <= 0.005);
  CHECK(std::abs(mi_by_name(d, "from", "to") - 0.26) <= 0.005);
  CHECK(std::abs(mi_by_name(d, "arg1", "arg2") - 0.01) <= 0.005);
  CHECK(std::abs(mi_by_name(d, "arg1", "from") - 0.02) <= 0.005);
  CHECK(std::abs(mi_by_name(d, "arg1", "to") - 0.00) <= 0.005);
  // Frozen from an independent numpy evaluation of the same estimator.
  CHECK(mi_by_name(d, "arg1", "arg2") == doctest::Approx(0.0111419362).epsilon(1e-8));
  CHECK(mi_by_name(d, "arg1", "from") == doctest::Approx(0.0212688628).epsilon(1e-8));
  CHECK(mi_by_name(d, "arg1", "to") == doctest::Approx(0.0002296026).epsilon(1e-6));
  CHECK(mi_by_name(d, "arg2", "from") == doctest::Approx(0.2105983557).epsilon(1e-8));
  CHECK(mi_by_name(d, "arg2", "to") == doctest::Approx(0.4311244093).epsilon(1e-8));
  CHECK(mi_by_name(d, "from", "to") == doctest::Approx(0.2620452732).epsilon(1e-8));
}

TEST_CASE("mutual information of a factorized table is zero") {
  auto balanced = make_dataset({{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {2, 2});
  CHECK(mutual_information(balanced, 0, 1) == 0.0);
}

TEST_CASE("mdl_threshold") {
  CHECK(mdl_threshold(3, 2, 9) == doctest::Approx(0.3522138890).epsilon(1e-9));
  CHECK(mdl_threshold(2, 2, 9) == doctest::Approx(0.1761069445).epsilon(1e-9));
  CHECK(std::abs(mdl_threshold(3, 2, 9) - 0.35) <= 0.005);
  CHECK(std::abs(mdl_threshold(2, 2, 9) - 0.18) <= 0.005);
  CHECK(mdl_threshold(2, 2, 2) == 0.25);
  CHECK(mdl_threshold(2, 2, 1) == 0.0);
  CHECK(mdl_threshold(1, 5, 100) == 0.0);
  for (std::size_t k : {2, 3, 5}) {
    for (std::size_t n = 3; n < 2000; ++n) CHECK(mdl_threshold(k, k, n + 1) < mdl_threshold(k, k, n));
  }
}

TEST_CASE("kl_divergence") {
  const std::vector<double> p{0.75, 0.25}, q{0.5, 0.5};
  CHECK(kl_divergence(p, p) == 0.0);
  CHECK(kl_divergence(p, q) == doctest::Approx(0.75 * std::log2(1.5) + 0.25 * std::log2(0.5)));
  CHECK(kl_divergence(p, q) == doctest::Approx(0.1887).epsilon(1e-3));
  CHECK(kl_divergence(p, q) != doctest::Approx(kl_divergence(q, p)));

  const std::vector<double> r{0.5, 0.3, 0.2};
  CHECK_THROWS_AS(kl_divergence(p, r), DataError);
  const std::vector<double> zero{1.0, 0.0};
  CHECK_THROWS_AS(kl_divergence(q, zero), DataError);
  CHECK(kl_divergence(zero, q) == doctest::Approx(1.0));

  JointDistribution a{{2, 2}, {0.25, 0.25, 0.25, 0.25}};
  JointDistribution b{{4}, {0.25, 0.25, 0.25, 0.25}};
  CHECK_THROWS_AS(kl_divergence(a, b), DataError);
}

TEST_CASE("kl_divergence is asymmetric on a random pair") {
  Rng rng(3);
  std::vector<double> p(6), q(6);
  double sp = 0, sq = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    sp += p[i] = 0.1 + rng.uniform();
    sq += q[i] = 0.1 + rng.uniform();
  }
  for (std::size_t i = 0; i < 6; ++i) {
    p[i] /= sp;
    q[i] /= sq;
  }
  CHECK(kl_divergence(p, q) > 0.0);
  CHECK(kl_divergence(p, q) != kl_divergence(q, p));
}

TEST_CASE("perplexity") {
  Variable bin{"x", {"0", "1"}};
  DendroidModel half("h", {bin}, {}, {{0.5, 0.5}}, 10);
  auto test = DiscreteDataset("h", {bin}, {0, 1, 1, 0, 1});
  CHECK(perplexity(half, test) == doctest::Approx(2.0).epsilon(1e-15));

  Variable y{"y", {"0", "1"}};
  DendroidModel two("h", {bin, y}, {}, {{0.5, 0.5}, {0.5, 0.5}}, 10);
  auto cells = DiscreteDataset("h", {bin, y}, {0, 0, 0, 1, 1, 1});
  CHECK(perplexity(two, cells) == doctest::Approx(4.0).epsilon(1e-15));

  auto other = DiscreteDataset("h", {Variable{"x", {"0", "1", "2"}}}, {0});
  CHECK_THROWS_AS(perplexity(half, other), DataError);
}

TEST_CASE("perplexity equals the inverse geometric mean of row probabilities") {
  Variable a{"a", {"0", "1", "2"}}, b{"b", {"0", "1"}};
  DendroidModel model("h", {a, b}, {{0, 1}}, {{0.2, 0.3, 0.5}, {0.9, 0.1, 0.4, 0.6, 0.25, 0.75}}, 5);
  auto test = DiscreteDataset("h", {a, b}, {0, 0, 1, 1, 2, 1, 2, 0});
  double product = 1.0;
  for (std::size_t r = 0; r < test.num_rows(); ++r) product *= model.probability(test.row(r));
  CHECK(perplexity(model, test) == doctest::Approx(std::pow(product, -1.0 / 4.0)).epsilon(1e-12));
}

TEST_CASE("statistics properties on random data") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t ka = 1 + rng.index(4), kb = 1 + rng.index(4), kc = 2 + rng.index(3);
    auto d = random_dataset(rng, {ka, kb, kc}, 1 + rng.index(60));
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        if (i == j) continue;
        auto t = ele_joint(d, i, j);
        double sum = 0.0;
        for (double p : t.probs) {
          CHECK(p > 0.0);
          sum += p;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
        for (std::size_t a = 0; a < t.k_i; ++a) {
          double row = 0.0;
          for (std::size_t b = 0; b < t.k_j; ++b) row += t.at(a, b);
          CHECK(std::abs(row - t.marginal_i[a]) <= 1e-12);
        }
        const double mi = mutual_information(t);
        CHECK(mi >= 0.0);
        CHECK(mi == mutual_information(d, j, i));
        CHECK(mi == doctest::Approx(oracle_mi(d, i, j)).epsilon(1e-9).scale(1.0));
      }
    }
  }
}

}  // namespace
}  // namespace dendroid
