#include "geomis/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

#include "geomis/errors.hpp"

namespace geomis {

namespace {

using Mask = std::uint64_t;

Mask bit(int v) { return Mask{1} << v; }

class BranchAndBound {
 public:
  explicit BranchAndBound(const Graph& g) : n_(g.size()), adj_(static_cast<std::size_t>(n_), 0) {
    for (int v = 0; v < n_; ++v) {
      for (int u : g.neighbors(v)) adj_[static_cast<std::size_t>(v)] |= bit(u);
    }
  }

  /// Size of a maximum independent set inside `candidates`.
  int solve(Mask candidates) {
    best_ = greedy(candidates);
    search(candidates, 0);
    return best_;
  }

  Mask neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }

 private:
  int degree_in(int v, Mask p) const { return std::popcount(neighbors(v) & p); }

  // Min-degree greedy, a valid lower bound.
  int greedy(Mask p) const {
    int size = 0;
    while (p != 0) {
      int pick = -1;
      int pick_deg = n_ + 1;
      for (Mask q = p; q != 0; q &= q - 1) {
        const int v = std::countr_zero(q);
        const int deg = degree_in(v, p);
        if (deg < pick_deg) {
          pick = v;
          pick_deg = deg;
        }
      }
      p &= ~(neighbors(pick) | bit(pick));
      ++size;
    }
    return size;
  }

  void search(Mask p, int size) {
    // Reductions: degree-0 and degree-1 vertices are always safe to take.
    bool reduced = true;
    while (reduced && p != 0) {
      reduced = false;
      for (Mask q = p; q != 0; q &= q - 1) {
        const int v = std::countr_zero(q);
        if (degree_in(v, p) <= 1) {
          p &= ~(neighbors(v) | bit(v));
          ++size;
          reduced = true;
          break;
        }
      }
    }
    if (p == 0) {
      best_ = std::max(best_, size);
      return;
    }

    int branch = -1;
    int max_deg = -1;
    int edge_ends = 0;
    const int count = std::popcount(p);
    for (Mask q = p; q != 0; q &= q - 1) {
      const int v = std::countr_zero(q);
      const int deg = degree_in(v, p);
      edge_ends += deg;
      if (deg > max_deg) {
        max_deg = deg;
        branch = v;
      }
    }
    // Every edge needs an endpoint outside the independent set; each such
    // vertex covers at most max_deg edges.
    const int edges = edge_ends / 2;
    const int upper = count - (edges + max_deg - 1) / max_deg;
    if (size + upper <= best_) return;

    search(p & ~(neighbors(branch) | bit(branch)), size + 1);
    search(p & ~bit(branch), size);
  }

  int n_;
  std::vector<Mask> adj_;
  int best_ = 0;
};

Mask full_mask(int n) { return n == 64 ? ~Mask{0} : bit(n) - 1; }

void check_limit(int n, int node_limit, const char* what) {
  if (node_limit < 1 || node_limit > kMaxNodeLimit) {
    throw UsageError("node_limit must be in [1, " + std::to_string(kMaxNodeLimit) + "]");
  }
  if (n > node_limit) {
    throw OracleRefusal(std::string(what) + ": " + std::to_string(n) +
                        " vertices exceed the node limit of " + std::to_string(node_limit));
  }
}

}  // namespace

MisResult exact_mis(const Graph& graph, int node_limit) {
  check_limit(graph.size(), node_limit, "exact_mis");
  const int n = graph.size();
  if (n == 0) return {};
  BranchAndBound bb(graph);
  const Mask all = full_mask(n);
  const int optimum = bb.solve(all);

  // Lexicographically smallest optimum: take v whenever an optimum survives.
  MisResult out;
  out.size = optimum;
  Mask remaining = all;
  int needed = optimum;
  for (int v = 0; v < n && needed > 0; ++v) {
    if ((remaining & bit(v)) == 0) continue;
    remaining &= ~bit(v);
    const Mask with_v = remaining & ~bb.neighbors(v);
    if (1 + bb.solve(with_v) == needed) {
      out.witness.push_back(v);
      remaining = with_v;
      --needed;
    }
  }
  return out;
}

IknResult independent_kissing_number(const Graph& graph, int node_limit) {
  IknResult out;
  for (int v = 0; v < graph.size(); ++v) {
    const auto& nbrs = graph.neighbors(v);
    if (nbrs.empty()) continue;
    check_limit(static_cast<int>(nbrs.size()), node_limit, "independent_kissing_number");
    if (static_cast<int>(nbrs.size()) <= out.zeta) continue;
    const auto local = exact_mis(graph.induced(nbrs), node_limit);
    if (local.size > out.zeta) {
      out.zeta = local.size;
      out.witness_center = v;
      out.witness_set.clear();
      for (int i : local.witness) out.witness_set.push_back(nbrs[static_cast<std::size_t>(i)]);
    }
  }
  return out;
}

RatioCheck verify_ratio(const ArrivalSequence& seq, const RunResult& run, int node_limit) {
  const Graph g = seq.graph();
  RatioCheck out;
  out.opt = exact_mis(g, node_limit).size;
  out.alg = static_cast<int>(run.size());
  out.ratio = empirical_ratio(out.opt, run);
  out.zeta = independent_kissing_number(g, node_limit).zeta;
  out.bound_satisfied = out.opt <= std::max(out.zeta, 1) * out.alg;
  return out;
}

}  // namespace geomis
