#include "geomis/graph.hpp"

#include <algorithm>
#include <string>

#include "geomis/errors.hpp"

namespace geomis {

Graph::Graph(int n) {
  if (n < 0) throw UsageError("graph size must be non-negative");
  adj_.resize(static_cast<std::size_t>(n));
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= size() || v >= size()) {
    throw UsageError("edge {" + std::to_string(u) + "," + std::to_string(v) + "} out of range");
  }
  if (u == v) throw UsageError("self loops are not allowed");
  auto& nu = adj_[static_cast<std::size_t>(u)];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it != nu.end() && *it == v) return;
  nu.insert(it, v);
  auto& nv = adj_[static_cast<std::size_t>(v)];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  ++edges_;
}

bool Graph::adjacent(int u, int v) const {
  const auto& nu = neighbors(u);
  return std::binary_search(nu.begin(), nu.end(), v);
}

Graph Graph::induced(std::span<const int> vertices) const {
  Graph sub(static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (adjacent(vertices[i], vertices[j])) {
        sub.add_edge(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return sub;
}

bool Graph::is_independent(std::span<const int> set) const {
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      if (set[i] == set[j] || adjacent(set[i], set[j])) return false;
    }
  }
  return true;
}

bool Graph::is_dominating(std::span<const int> set) const {
  std::vector<char> covered(adj_.size(), 0);
  for (int v : set) {
    covered[static_cast<std::size_t>(v)] = 1;
    for (int u : neighbors(v)) covered[static_cast<std::size_t>(u)] = 1;
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

}  // namespace geomis
