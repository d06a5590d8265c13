#include "dendroid/forest.h"

#include <set>

#include "doctest.h"
#include "dendroid/errors.h"

namespace dendroid {
namespace {

const std::vector<std::string> kFly{"arg1", "arg2", "to", "from"};

TEST_CASE("forest rejects cycles, loops and duplicates") {
  DependencyForest f({"a", "b", "c"});
  f.add_edge(0, 1);
  f.add_edge(2, 1);
  CHECK(f.num_edges() == 2);
  CHECK(f.has_edge(1, 2));
  CHECK_THROWS_AS(f.add_edge(0, 2), DataError);
  CHECK_THROWS_AS(f.add_edge(1, 0), DataError);
  CHECK_THROWS_AS(f.add_edge(1, 1), DataError);
  CHECK_THROWS_AS(f.add_edge(1, 3), DataError);
}

TEST_CASE("root_trees picks the maximum-degree node") {
  // {(arg2,to),(from,to)}: root at 'to', arcs to->arg2 and to->from.
  DependencyForest f(kFly, {{1, 2}, {3, 2}});
  auto arcs = root_trees(f);
  CHECK(arcs == std::vector<Arc>{{2, 1}, {2, 3}});

  DependencyForest empty(kFly);
  CHECK(root_trees(empty).empty());
  CHECK(default_roots(empty) == std::vector<std::size_t>{0, 1, 2, 3});

  DependencyForest chain({"a", "b", "c"}, {{0, 1}, {1, 2}});
  CHECK(root_trees(chain) == std::vector<Arc>{{1, 0}, {1, 2}});

  // Degree ties go to the lowest index.
  DependencyForest pair({"a", "b"}, {{0, 1}});
  CHECK(root_trees(pair) == std::vector<Arc>{{0, 1}});
}

TEST_CASE("orient with explicit roots") {
  DependencyForest chain({"a", "b", "c", "d"}, {{0, 1}, {1, 2}});
  CHECK(orient(chain, {2}) == std::vector<Arc>{{2, 1}, {1, 0}});
  CHECK(orient(chain, {0, 3}) == std::vector<Arc>{{0, 1}, {1, 2}});
  CHECK_THROWS_AS(orient(chain, {0, 1}), std::invalid_argument);
}

TEST_CASE("enumerate_forests counts labeled forests") {
  CHECK(enumerate_forests({"a"}).size() == 1);
  CHECK(enumerate_forests({"a", "b"}).size() == 2);
  CHECK(enumerate_forests({"a", "b", "c"}).size() == 7);
  // Labeled forests on 4 and 5 nodes: 38 and 291.
  CHECK(enumerate_forests({"a", "b", "c", "d"}).size() == 38);
  CHECK(enumerate_forests({"a", "b", "c", "d", "e"}).size() == 291);

  std::set<std::vector<Edge>> distinct;
  for (const auto& f : enumerate_forests({"a", "b", "c", "d"})) distinct.insert(f.edges());
  CHECK(distinct.size() == 38);
}

TEST_CASE("disjoint sets") {
  DisjointSets s(5);
  CHECK(s.unite(0, 1));
  CHECK(s.unite(3, 4));
  CHECK_FALSE(s.unite(1, 0));
  CHECK(s.unite(1, 4));
  CHECK(s.find(0) == s.find(3));
  CHECK(s.find(2) != s.find(0));
}

}  // namespace
}  // namespace dendroid
