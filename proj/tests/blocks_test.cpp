#include "oracles.hpp"
#include "ramsey/blocks.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ramsey;

namespace {

// Per-edge cycle count straight from the definition.
auto cycles_through(const Tournament &t, int u, int v) -> int {
  int d = 0;
  for (int w = 0; w < t.order(); ++w)
    if (w != u && w != v && t.beats(v, w) && t.beats(w, u))
      ++d;
  return d;
}

} // namespace

TEST(Blocks, TransitiveEdge) {
  const auto b = block_decomposition(Tournament::transitive(4), 0, 1);
  EXPECT_EQ(b.a, (VertexSet::single(2) | VertexSet::single(3)));
  EXPECT_TRUE(b.b.empty());
  EXPECT_TRUE(b.c.empty());
  EXPECT_TRUE(b.d.empty());
}

TEST(Blocks, MissingEdgeIsRejected) {
  try {
    block_decomposition(Tournament::transitive(4), 1, 0);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoSuchEdge);
  }
}

TEST(Blocks, Qr23EveryEdgeIsBalanced) {
  const auto t = from_circulant(23, quadratic_residues(23));
  for (int u = 0; u < 23; ++u)
    for (int v : t.out(u)) {
      const auto b = block_decomposition(t, u, v);
      EXPECT_EQ(b.a.size(), 5);
      EXPECT_EQ(b.b.size(), 5);
      EXPECT_EQ(b.c.size(), 5);
      EXPECT_EQ(b.d.size(), 6);
      EXPECT_EQ(cycles_through(t, u, v), 6);
    }
}

TEST(Blocks, PartitionAndDefinitions) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial;
    const auto t = oracle::random_tournament(n, rng);
    for (int u = 0; u < n; ++u)
      for (int v : t.out(u)) {
        const auto b = block_decomposition(t, u, v);
        EXPECT_EQ(b.a.size() + b.b.size() + b.c.size() + b.d.size(), n - 2);
        EXPECT_EQ((b.a | b.b | b.c | b.d | VertexSet::single(u) | VertexSet::single(v)), t.vertices());
        EXPECT_TRUE((b.a & b.b).empty() && (b.a & b.c).empty() && (b.a & b.d).empty());
        EXPECT_TRUE((b.b & b.c).empty() && (b.b & b.d).empty() && (b.c & b.d).empty());
        for (int w : b.a)
          EXPECT_TRUE(t.beats(u, w) && t.beats(v, w));
        for (int w : b.b)
          EXPECT_TRUE(t.beats(u, w) && t.beats(w, v));
        for (int w : b.c)
          EXPECT_TRUE(t.beats(w, u) && t.beats(w, v));
        EXPECT_EQ(b.d.size(), cycles_through(t, u, v));
      }
  }
}

TEST(Blocks, MinCycleEdgeIsMinimalAndBelowAverage) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 20;
    const auto t = oracle::random_tournament(n, rng);
    const auto [u, v] = min_cycle_edge(t);
    ASSERT_TRUE(t.beats(u, v));
    const int d = cycles_through(t, u, v);
    std::pair<int, int> first{-1, -1};
    int best = n;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b && t.beats(a, b) && cycles_through(t, a, b) < best) {
          best = cycles_through(t, a, b);
          first = {a, b};
        }
    EXPECT_EQ(d, best);
    EXPECT_EQ((std::pair{u, v}), first);
    EXPECT_LE(Rational(d), Rational(3 * count_3cycles(t), choose2(n)));
  }
}
