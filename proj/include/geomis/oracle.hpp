#pragma once

#include <vector>

#include "geomis/graph.hpp"
#include "geomis/online.hpp"

namespace geomis {

inline constexpr int kDefaultNodeLimit = 40;
inline constexpr int kMaxNodeLimit = 64;

struct MisResult {
  int size = 0;
  std::vector<int> witness;  ///< lexicographically smallest optimal set
};

struct IknResult {
  int zeta = 0;
  int witness_center = -1;       ///< -1 for a graph with no edges
  std::vector<int> witness_set;  ///< independent subset of N(witness_center)
};

/// Exact maximum independent set by branch and bound.
///
/// Branches on a maximum-degree vertex (exclude / include and drop its
/// neighbourhood), takes degree <= 1 vertices greedily, and prunes with
/// alpha <= n - ceil(m / Delta). Throws OracleRefusal when the graph has
/// more than `node_limit` vertices; never approximates.
MisResult exact_mis(const Graph& graph, int node_limit = kDefaultNodeLimit);

/// max over v of the MIS size of G[N(v)]. The limit applies per neighbourhood.
IknResult independent_kissing_number(const Graph& graph, int node_limit = kDefaultNodeLimit);

struct RatioCheck {
  int opt = 0;
  int alg = 0;
  double ratio = 1.0;
  int zeta = 0;
  bool bound_satisfied = true;  ///< opt <= max(zeta, 1) * alg
};

RatioCheck verify_ratio(const ArrivalSequence& seq, const RunResult& run,
                        int node_limit = kDefaultNodeLimit);

}  // namespace geomis
