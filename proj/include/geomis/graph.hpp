#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace geomis {

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
 public:
  explicit Graph(int n = 0);

  int size() const { return static_cast<int>(adj_.size()); }
  std::size_t edge_count() const { return edges_; }

  /// Adds {u,v}; no-op if already present. Throws UsageError on a self loop
  /// or an out-of-range vertex.
  void add_edge(int u, int v);
  bool adjacent(int u, int v) const;
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

  /// Subgraph induced by `vertices` (given in increasing order), relabelled 0..k-1.
  Graph induced(std::span<const int> vertices) const;

  bool is_independent(std::span<const int> set) const;
  bool is_dominating(std::span<const int> set) const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::vector<int>> adj_;
  std::size_t edges_ = 0;
};

}  // namespace geomis
