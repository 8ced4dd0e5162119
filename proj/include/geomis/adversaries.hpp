#pragma once

#include <cstdint>

#include "geomis/online.hpp"

namespace geomis {

struct StarOutcome {
  ArrivalSequence played;  ///< the transcript as revealed
  RunResult run;
  int opt_size = 0;
};

/// Adaptive star adversary. Reveals v0; if the algorithm rejects it the game
/// ends (opt 1). Otherwise reveals `zeta` pairwise non-adjacent neighbours of
/// v0, none of which can be accepted next to v0 (opt zeta).
StarOutcome star_adversary(int zeta, OnlineAlgorithm& algorithm);

/// Oblivious level graph with `zeta` levels of two non-adjacent vertices.
/// Level i >= 2 picks the left or right vertex of level i-1 by a fair coin;
/// both new vertices join that parent and every earlier vertex it touches.
/// Reveal order is level by level, left then right.
ArrivalSequence level_graph_gen(int zeta, std::uint64_t seed);

/// n balls with centres uniform in [0, box_side]^dim and radii uniform in
/// [min_radius, max_radius] (unit balls by default).
ArrivalSequence random_balls_gen(int n, int dim, double box_side, std::uint64_t seed,
                                 double min_radius = 1.0, double max_radius = 1.0);

/// n hyper-rectangles with lower corners uniform in [0, box_side]^dim and
/// side lengths uniform in [1, M].
ArrivalSequence random_rects_gen(int n, int dim, double max_side, double box_side,
                                 std::uint64_t seed);

/// Abstract G(n, p) revealed in vertex order.
ArrivalSequence random_graph_gen(int n, double edge_probability, std::uint64_t seed);

}  // namespace geomis
