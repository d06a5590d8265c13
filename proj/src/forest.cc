#include "dendroid/forest.h"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "dendroid/errors.h"

namespace dendroid {

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
  for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
}

std::size_t DisjointSets::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

DependencyForest::DependencyForest(std::vector<std::string> variables)
    : variables_(std::move(variables)) {}

DependencyForest::DependencyForest(std::vector<std::string> variables, std::vector<Edge> edges)
    : variables_(std::move(variables)) {
  for (const auto& e : edges) add_edge(e.a, e.b);
}

bool DependencyForest::has_edge(std::size_t a, std::size_t b) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge(a, b));
}

void DependencyForest::add_edge(std::size_t a, std::size_t b) {
  const std::size_t n = variables_.size();
  if (a >= n || b >= n) throw DataError("edge endpoint out of range");
  if (a == b) throw DataError("self-loop on '" + variables_[a] + "'");
  if (has_edge(a, b)) {
    throw DataError("duplicate edge (" + variables_[a] + ", " + variables_[b] + ")");
  }
  if (components()[a] == components()[b]) {
    throw DataError("edge (" + variables_[a] + ", " + variables_[b] + ") would create a cycle");
  }
  const Edge e(a, b);
  edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e), e);
}

std::vector<std::size_t> DependencyForest::degrees() const {
  std::vector<std::size_t> deg(variables_.size(), 0);
  for (const auto& e : edges_) {
    ++deg[e.a];
    ++deg[e.b];
  }
  return deg;
}

std::vector<std::vector<std::size_t>> DependencyForest::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(variables_.size());
  for (const auto& e : edges_) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::vector<std::size_t> DependencyForest::components() const {
  DisjointSets sets(variables_.size());
  for (const auto& e : edges_) sets.unite(e.a, e.b);
  std::vector<std::size_t> id(variables_.size(), SIZE_MAX);
  std::vector<std::size_t> rep_to_id(variables_.size(), SIZE_MAX);
  std::size_t next = 0;
  for (std::size_t v = 0; v < variables_.size(); ++v) {
    const std::size_t rep = sets.find(v);
    if (rep_to_id[rep] == SIZE_MAX) rep_to_id[rep] = next++;
    id[v] = rep_to_id[rep];
  }
  return id;
}

std::vector<std::size_t> default_roots(const DependencyForest& forest) {
  const auto comp = forest.components();
  const auto deg = forest.degrees();
  std::vector<std::size_t> roots;
  for (std::size_t v = 0; v < forest.num_variables(); ++v) {
    if (comp[v] == roots.size()) {
      roots.push_back(v);
    } else if (deg[v] > deg[roots[comp[v]]]) {
      roots[comp[v]] = v;
    }
  }
  return roots;
}

std::vector<Arc> orient(const DependencyForest& forest, const std::vector<std::size_t>& roots) {
  const std::size_t n = forest.num_variables();
  const auto comp = forest.components();
  const auto adj = forest.adjacency();
  auto fallback = default_roots(forest);

  std::vector<std::size_t> chosen = fallback;
  std::vector<bool> assigned(fallback.size(), false);
  for (std::size_t r : roots) {
    if (r >= n) throw std::invalid_argument("root index out of range");
    if (assigned[comp[r]]) throw std::invalid_argument("two roots given for one tree");
    chosen[comp[r]] = r;
    assigned[comp[r]] = true;
  }

  std::vector<Arc> arcs;
  std::vector<bool> visited(n, false);
  for (std::size_t root : chosen) {
    std::deque<std::size_t> queue{root};
    visited[root] = true;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t w : adj[u]) {
        if (visited[w]) continue;
        visited[w] = true;
        arcs.push_back({u, w});
        queue.push_back(w);
      }
    }
  }
  return arcs;
}

std::vector<Arc> root_trees(const DependencyForest& forest) {
  return orient(forest, default_roots(forest));
}

std::vector<DependencyForest> enumerate_forests(const std::vector<std::string>& variables) {
  const std::size_t n = variables.size();
  if (n > 6) throw std::invalid_argument("enumerate_forests supports at most 6 variables");
  std::vector<Edge> all;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) all.emplace_back(a, b);
  }
  std::vector<DependencyForest> out;
  const std::size_t subsets = std::size_t{1} << all.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    DisjointSets sets(n);
    bool acyclic = true;
    DependencyForest forest(variables);
    for (std::size_t e = 0; e < all.size() && acyclic; ++e) {
      if (!(mask >> e & 1)) continue;
      acyclic = sets.unite(all[e].a, all[e].b);
      if (acyclic) forest.add_edge(all[e].a, all[e].b);
    }
    if (acyclic) out.push_back(std::move(forest));
  }
  return out;
}

}  // namespace dendroid
