#include "dendroid/dendroid_model.h"

#include <cmath>

#include "doctest.h"
#include "dendroid/errors.h"
#include "dendroid/evaluation.h"
#include "test_util.h"

namespace dendroid {
namespace {

using testing::make_dataset;
using testing::random_dataset;

const Variable kBin1{"x1", {"0", "1"}};
const Variable kBin2{"x2", {"0", "1"}};
const Variable kBin3{"x3", {"0", "1"}};

double total_probability(const DendroidModel& m) {
  double sum = 0.0;
  for (double p : m.joint_distribution().probs) sum += p;
  return sum;
}

TEST_CASE("model constructor validates invariants") {
  CHECK_NOTHROW(DendroidModel("h", {kBin1, kBin2}, {{0, 1}}, {{0.4, 0.6}, {0.5, 0.5, 0.1, 0.9}}, 1));
  CHECK_THROWS_AS(DendroidModel("h", {kBin1}, {}, {{0.4, 0.5}}, 1), DataError);
  CHECK_THROWS_AS(DendroidModel("h", {kBin1}, {}, {{1.0, 0.0}}, 1), DataError);
  CHECK_THROWS_AS(DendroidModel("h", {kBin1, kBin2}, {{0, 1}, {1, 0}}, {{0.5, 0.5}, {0.5, 0.5, 0.5, 0.5}}, 1),
                  DataError);
  CHECK_THROWS_AS(DendroidModel("h", {kBin1, kBin2, kBin3}, {{0, 2}, {1, 2}},
                                {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5, 0.5, 0.5}}, 1),
                  DataError);
  CHECK_THROWS_AS(DendroidModel("h", {kBin1, kBin2}, {{0, 1}}, {{0.5, 0.5}, {0.5, 0.5}}, 1), DataError);
}

TEST_CASE("evaluate") {
  DendroidModel chain("h", {kBin1, kBin2}, {{0, 1}}, {{0.4, 0.6}, {0.5, 0.5, 0.1, 0.9}}, 1);
  CHECK(chain.probability(std::vector<ValueIndex>{1, 1}) == doctest::Approx(0.54));
  CHECK(chain.encode({{"x1", "1"}, {"x2", "1"}}) == std::vector<ValueIndex>{1, 1});
  CHECK_THROWS_AS(chain.encode({{"x1", "1"}}), DataError);
  CHECK_THROWS_AS(chain.encode({{"x1", "1"}, {"x2", "2"}}), DataError);
  CHECK_THROWS_AS(chain.encode({{"x1", "1"}, {"x2", "1"}, {"x9", "1"}}), DataError);
  CHECK_THROWS_AS(chain.probability(std::vector<ValueIndex>{1}), DataError);
  CHECK_THROWS_AS(chain.probability(std::vector<ValueIndex>{1, 2}), DataError);

  DendroidModel edgeless("h", {kBin1, kBin2}, {}, {{0.4, 0.6}, {0.3, 0.7}}, 1);
  CHECK(edgeless.probability(std::vector<ValueIndex>{1, 0}) == doctest::Approx(0.6 * 0.3));
}

TEST_CASE("fit_parameters uses the expected likelihood estimator") {
  auto one = make_dataset({{1}}, {2});
  auto m = fit_parameters(DependencyForest({"x1"}), one);
  CHECK(m.table(0)[1] == doctest::Approx(0.75));

  auto uniform = make_dataset({{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {2, 2});
  auto u = fit_parameters(DependencyForest({"x1", "x2"}, {{0, 1}}), uniform);
  for (std::size_t v = 0; v < 2; ++v) {
    for (double p : u.table(v)) CHECK(p == doctest::Approx(0.5));
  }

  // count(parent=a, child=b) + 0.5 over count(parent=a) + 0.5 k_child.
  auto d = make_dataset({{0, 0}, {0, 0}, {0, 1}, {1, 1}}, {2, 2});
  auto c = fit_parameters(std::vector<Arc>{{0, 1}}, d);
  CHECK(c.conditional(1, 0, 0) == doctest::Approx(2.5 / 4.0));
  CHECK(c.conditional(1, 1, 1) == doctest::Approx(1.5 / 2.0));
  CHECK(c.conditional(0, 0) == doctest::Approx(3.5 / 5.0));

  CHECK_THROWS_AS(fit_parameters(DependencyForest({"y1", "x2"}), uniform), DataError);
  CHECK_THROWS_AS(fit_parameters(DependencyForest({"x1"}), uniform), DataError);
}

TEST_CASE("slot presence near one, as in a verb's subject slot") {
  std::vector<std::vector<ValueIndex>> rows(1750, {1});
  rows[0] = {0};
  auto d = make_dataset(rows, {2});
  auto m = fit_parameters(DependencyForest({"x1"}), d);
  CHECK(m.table(0)[1] == doctest::Approx(1749.5 / 1751.0));
}

TEST_CASE("parameter_count") {
  DendroidModel indep("h", {kBin1, kBin2, kBin3}, {}, {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}}, 1);
  CHECK(indep.parameter_count() == 3);
  DendroidModel chain("h", {kBin1, kBin2, kBin3}, {{0, 1}, {1, 2}},
                      {{0.5, 0.5}, {0.5, 0.5, 0.5, 0.5}, {0.5, 0.5, 0.5, 0.5}}, 1);
  CHECK(chain.parameter_count() == 5);
  DendroidModel four("h", {Variable{"x", {"a", "b", "c", "d"}}}, {}, {{0.25, 0.25, 0.25, 0.25}}, 1);
  CHECK(parameter_count(four) == 3);
}

// Re-expresses a model under another orientation via Bayes' rule.
DendroidModel reparameterize(const DendroidModel& m, const std::vector<Arc>& arcs) {
  std::vector<std::vector<double>> tables(m.num_variables());
  for (std::size_t v = 0; v < m.num_variables(); ++v) tables[v] = m.marginal(v);
  for (const Arc& arc : arcs) {
    const auto pm = m.pair_marginal(arc.parent, arc.child);
    const auto pp = m.marginal(arc.parent);
    const std::size_t kc = m.variable(arc.child).size();
    auto& t = tables[arc.child];
    t.assign(pm.size(), 0.0);
    for (std::size_t c = 0; c < pm.size(); ++c) t[c] = pm[c] / pp[c / kc];
  }
  return DendroidModel(m.head(), m.variables(), arcs, tables, m.sample_count());
}

TEST_CASE("exhaustive normalization and root invariance on random models") {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng.index(6);
    std::vector<std::size_t> ks;
    for (std::size_t i = 0; i < n; ++i) ks.push_back(2 + rng.index(2));
    auto data = random_dataset(rng, ks, 30 + rng.index(50));

    std::vector<std::string> names;
    for (const auto& v : data.variables()) names.push_back(v.name);
    DependencyForest forest(names);
    DisjointSets sets(n);
    for (std::size_t tries = 0; tries < n; ++tries) {
      const std::size_t a = rng.index(n), b = rng.index(n);
      if (a != b && sets.unite(a, b)) forest.add_edge(a, b);
    }
    const auto base = fit_parameters(forest, data);
    CHECK(total_probability(base) == doctest::Approx(1.0).epsilon(1e-9));

    double base_ll = 0.0;
    for (std::size_t r = 0; r < data.num_rows(); ++r) base_ll += base.log2_probability(data.row(r));
    for (std::size_t root = 0; root < n; ++root) {
      const auto arcs = orient(forest, {root});
      CHECK(fit_parameters(arcs, data).parameter_count() == base.parameter_count());
      const auto moved = reparameterize(base, arcs);
      double ll = 0.0;
      for (std::size_t r = 0; r < data.num_rows(); ++r) ll += moved.log2_probability(data.row(r));
      CHECK(std::abs(ll - base_ll) <= 1e-9 * std::abs(base_ll));
    }
  }
}

TEST_CASE("marginals and pair marginals agree with enumeration") {
  auto model = make_random_dendroid(5, 3, 3, 17);
  const auto joint = model.joint_distribution();
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      if (i == j) continue;
      std::vector<double> expect(9, 0.0);
      std::vector<ValueIndex> row(5, 0);
      for (std::size_t c = 0; c < joint.probs.size(); ++c) {
        std::size_t rest = c;
        for (std::size_t v = 5; v-- > 0;) {
          row[v] = static_cast<ValueIndex>(rest % 3);
          rest /= 3;
        }
        expect[row[i] * 3 + row[j]] += joint.probs[c];
      }
      const auto pm = model.pair_marginal(i, j);
      for (std::size_t c = 0; c < 9; ++c) CHECK(pm[c] == doctest::Approx(expect[c]).epsilon(1e-12));
    }
  }
}

TEST_CASE("independent trees give an exactly factorized pair marginal") {
  auto model = make_random_dendroid(4, 2, 1, 3);
  const auto comp = model.forest().components();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j || comp[i] == comp[j]) continue;
      const auto pm = model.pair_marginal(i, j);
      CHECK(pm[3] == model.marginal(i)[1] * model.marginal(j)[1]);
    }
  }
}

TEST_CASE("sample is deterministic and matches the model") {
  Variable a{"a", {"0", "1"}}, b{"b", {"0", "1"}};
  DendroidModel m("h", {a, b}, {{0, 1}}, {{0.3, 0.7}, {0.98, 0.02, 0.03, 0.97}}, 0);
  CHECK(sample(m, 42, 500) == sample(m, 42, 500));
  CHECK_FALSE(sample(m, 42, 500) == sample(m, 43, 500));
  CHECK(sample(m, 1, 1).num_rows() == 1);
  CHECK_THROWS_AS(sample(m, 1, 0), std::invalid_argument);

  const std::size_t count = 10000;
  auto d = sample(m, 9, count);
  std::vector<double> freq(4, 0.0);
  for (std::size_t r = 0; r < count; ++r) freq[d.value(r, 0) * 2 + d.value(r, 1)] += 1.0;
  for (std::size_t c = 0; c < 4; ++c) {
    const double p = m.probability(std::vector<ValueIndex>{static_cast<ValueIndex>(c / 2), static_cast<ValueIndex>(c % 2)});
    const double sigma = std::sqrt(count * p * (1 - p));
    CHECK(std::abs(freq[c] - count * p) <= 3 * sigma);
  }
}

}  // namespace
}  // namespace dendroid
