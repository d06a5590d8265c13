#ifndef DENDROID_FOREST_H_
#define DENDROID_FOREST_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace dendroid {

// Union-find over 0..n-1 with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);

  std::size_t find(std::size_t x);
  // Merges the sets holding a and b; false if they were already one set.
  bool unite(std::size_t a, std::size_t b);

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

// Undirected edge, stored with a < b.
struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;

  Edge() = default;
  Edge(std::size_t x, std::size_t y) : a(x < y ? x : y), b(x < y ? y : x) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Directed arc from a parent variable to a child variable.
struct Arc {
  std::size_t parent = 0;
  std::size_t child = 0;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// An acyclic undirected graph over named variables. Edges are kept sorted.
class DependencyForest {
 public:
  explicit DependencyForest(std::vector<std::string> variables);
  // Throws DataError on self-loops, duplicates, out-of-range ends or cycles.
  DependencyForest(std::vector<std::string> variables, std::vector<Edge> edges);

  const std::vector<std::string>& variables() const { return variables_; }
  std::size_t num_variables() const { return variables_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }

  bool has_edge(std::size_t a, std::size_t b) const;
  // Adds an edge; throws DataError if it would break the forest invariants.
  void add_edge(std::size_t a, std::size_t b);

  std::vector<std::size_t> degrees() const;
  std::vector<std::vector<std::size_t>> adjacency() const;
  // Component id per variable; ids are assigned in variable order.
  std::vector<std::size_t> components() const;

  friend bool operator==(const DependencyForest&, const DependencyForest&) = default;

 private:
  std::vector<std::string> variables_;
  std::vector<Edge> edges_;
};

// Orients each tree away from its given root by breadth-first traversal,
// visiting neighbours in variable order. `roots` holds one variable per
// component; components without a listed root are rooted by the default
// policy of root_trees.
std::vector<Arc> orient(const DependencyForest& forest, const std::vector<std::size_t>& roots);

// Roots every tree at its maximum-degree node (ties: lowest variable index)
// and orients arcs away from it.
std::vector<Arc> root_trees(const DependencyForest& forest);

// Default root of each component, ordered by component id.
std::vector<std::size_t> default_roots(const DependencyForest& forest);

// Every labeled forest on n nodes, in increasing order of edge-subset bitmask
// over the lexicographic edge list. n <= 6.
std::vector<DependencyForest> enumerate_forests(const std::vector<std::string>& variables);

}  // namespace dendroid

#endif  // DENDROID_FOREST_H_
