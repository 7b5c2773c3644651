#pragma once

#include "ramsey/tournament.hpp"

#include <utility>

namespace ramsey {

/// Partition of V \ {u, v} around an arc u -> v.
struct BlockDecomposition {
  int u = 0;
  int v = 0;
  VertexSet a; // u -> w and v -> w
  VertexSet b; // u -> w -> v
  VertexSet c; // w -> u and w -> v
  VertexSet d; // v -> w -> u; one 3-cycle through u -> v per vertex
};

inline auto block_decomposition(const Tournament &t, int u, int v) -> BlockDecomposition {
  if (u < 0 || v < 0 || u >= t.order() || v >= t.order() || u == v || !t.beats(u, v))
    throw Error(ErrorKind::NoSuchEdge,
                "no arc " + std::to_string(u) + " -> " + std::to_string(v));
  const auto rest = t.vertices() - VertexSet::single(u) - VertexSet::single(v);
  return BlockDecomposition{
      .u = u,
      .v = v,
      .a = rest & t.out(u) & t.out(v),
      .b = rest & t.out(u) & t.in(v),
      .c = rest & t.in(u) & t.in(v),
      .d = rest & t.in(u) & t.out(v),
  };
}

/// Arc lying on the fewest 3-cycles; ties go to the lexicographically
/// smallest (u, v).
inline auto min_cycle_edge(const Tournament &t) -> std::pair<int, int> {
  std::pair<int, int> best{-1, -1};
  int best_d = max_order + 1;
  for (int u = 0; u < t.order(); ++u)
    for (int v : t.out(u)) {
      const int d = (t.in(u) & t.out(v)).size();
      if (d < best_d) {
        best_d = d;
        best = {u, v};
      }
    }
  return best;
}

} // namespace ramsey
