#include "oracles.hpp"
#include "ramsey/encoder.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ramsey;

namespace {

// Variables named by endpoints: ab, ac, ad, bc, bd, cd, then
// abc, abd, acd, bcd.
constexpr int ab = 1, ac = 2, bc_3 = 3;

auto masks_extending(const PartialTournament &p, const std::set<std::uint64_t> &masks) -> std::set<std::uint64_t> {
  std::set<std::uint64_t> out;
  for (auto mask : masks) {
    const auto t = oracle::tournament_from_mask(p.order(), mask);
    bool ok = true;
    for (int i = 0; i < p.order() && ok; ++i)
      for (int j : p.known_out(i))
        ok = ok && t.beats(i, j);
    if (ok)
      out.insert(mask);
  }
  return out;
}

auto random_partial(int n, double density, std::mt19937_64 &rng) -> PartialTournament {
  PartialTournament p(n);
  std::bernoulli_distribution set(density), dir(0.5);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (set(rng))
        dir(rng) ? p.orient(i, j) : p.orient(j, i);
  return p;
}

} // namespace

TEST(EncodeDirect, ThreeVertexGolden) {
  const auto f = encode_direct(3, 3);
  EXPECT_EQ(f.var_count, 3);
  const std::vector<Clause> golden{{ab, ac, bc_3},   {ab, ac, -bc_3},   {-ab, ac, bc_3},
                                  {-ab, -ac, bc_3}, {-ab, -ac, -bc_3}, {ab, -ac, -bc_3}};
  EXPECT_EQ(oracle::clause_set(f.clauses), oracle::clause_set(golden));
}

TEST(EncodeDirect, ClauseCounts) {
  const auto f = encode_direct(4, 4);
  EXPECT_EQ(f.clauses.size(), 24U);
  for (const auto &c : f.clauses)
    EXPECT_EQ(c.size(), 6U);
  EXPECT_EQ(encode_direct(6, 4).clauses.size(), 24U * 15U);

  PartialTournament p(3);
  p.orient(0, 1);
  const auto g = encode_direct(3, 3, p);
  ASSERT_EQ(g.clauses.size(), 7U);
  EXPECT_EQ(g.clauses.back(), (Clause{ab}));
}

TEST(EncodeDirect, RejectsBadArguments) {
  try {
    encode_direct(4, 2);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::KTooSmall);
  }
  EXPECT_THROW(encode_direct(3, 4), Error);
  EXPECT_THROW(encode_cycle(4, 2), Error);
  EXPECT_THROW(encode_reduced(5, 2), Error);
}

TEST(EncodeCycle, FourVertexGolden) {
  const auto f = encode_cycle(4, 4);
  EXPECT_EQ(f.var_count, 10);
  EXPECT_EQ(f.clauses.size(), 13U);
  const int ad = 3, bc = 4, bd = 5, cd = 6, abc = 7, abd = 8, acd = 9, bcd = 10;
  const std::vector<Clause> expected{
      {-abc, ab, ac}, {-abc, -ab, bc}, {-abc, -ac, -bc},
      {-abd, ab, ad}, {-abd, -ab, bd}, {-abd, -ad, -bd},
      {-acd, ac, ad}, {-acd, -ac, cd}, {-acd, -ad, -cd},
      {-bcd, bc, bd}, {-bcd, -bc, cd}, {-bcd, -bd, -cd},
      {abc, abd, acd, bcd}};
  EXPECT_EQ(oracle::clause_set(f.clauses), oracle::clause_set(expected));

  const auto g = encode_cycle(3, 3);
  EXPECT_EQ(g.clauses.size(), 4U);
  EXPECT_EQ(g.clauses.back(), (Clause{4}));
}

TEST(EncodeCycle, ModelsOfFiveFourAreTtFourFree) {
  const auto f = encode_cycle(5, 4);
  const auto models = oracle::edge_projection_models(f, 5);
  ASSERT_FALSE(models.empty());
  for (auto mask : models)
    EXPECT_FALSE(oracle::brute_has_tt_k(oracle::tournament_from_mask(5, mask), 4));
}

TEST(SelfSubsume, ThreeVertexGolden) {
  const auto f = self_subsume(encode_direct(3, 3));
  const std::vector<Clause> golden{{ab, ac}, {-ab, bc_3}, {-ac, -bc_3}};
  EXPECT_EQ(oracle::clause_set(f.clauses), oracle::clause_set(golden));
  EXPECT_EQ(oracle::clause_set(encode_reduced(3, 3).clauses), oracle::clause_set(golden));
}

TEST(SelfSubsume, FixpointIsStable) {
  for (int n = 4; n <= 6; ++n) {
    const auto once = self_subsume(encode_direct(n, 4));
    EXPECT_TRUE(same_clauses(self_subsume(once), once));
  }
}

TEST(SelfSubsume, PreservesModels) {
  for (int n = 3; n <= 5; ++n)
    for (int k = 3; k <= n; ++k) {
      const auto direct = encode_direct(n, k);
      EXPECT_EQ(oracle::all_models(self_subsume(direct)), oracle::all_models(direct)) << n << "," << k;
    }
  // Clauses that only resolve after a first round of strengthening.
  CnfFormula f;
  f.var_count = 4;
  f.clauses = {{1, 2, 3}, {1, 2, -3}, {1, -2, 4}, {-1, 4}, {2, 3, 4}};
  EXPECT_EQ(oracle::all_models(self_subsume(f)), oracle::all_models(f));
}

TEST(SelfSubsume, HalvesLiteralsAtSevenFour) {
  const auto direct = encode_direct(7, 4);
  const auto reduced = self_subsume(direct);
  EXPECT_LE(2 * reduced.literal_count(), direct.literal_count());
  EXPECT_LT(reduced.clauses.size(), direct.clauses.size());
}

TEST(EncodeReduced, ArcConsistentOnThreeThree) {
  const auto f = encode_reduced(3, 3);
  for (int var = 1; var <= 3; ++var)
    for (int sign : {1, -1}) {
      const auto v = unit_propagate(f, {sign * var});
      ASSERT_TRUE(v);
      for (int other = 1; other <= 3; ++other)
        EXPECT_NE((*v)[other], 0) << "literal " << sign * var;
    }
  const auto v = unit_propagate(f, {-ab});
  EXPECT_EQ((*v)[ac], 1);
  EXPECT_EQ((*v)[bc_3], -1);
}

TEST(EncodeReduced, UnitsAppendedAfterReduction) {
  PartialTournament p(4);
  p.orient(2, 0);
  const auto f = encode_reduced(4, 3, p);
  EXPECT_EQ(f.clauses.back(), (Clause{-2}));
  const auto bare = encode_reduced(4, 3);
  EXPECT_EQ(f.clauses.size(), bare.clauses.size() + 1);
}

// Every encoding against the brute-force TT_k-free set; the acceptance binary
// repeats this up to n = 6.
TEST(Encodings, EdgeProjectionsMatchOracle) {
  for (int n = 3; n <= 5; ++n)
    for (int k = 3; k <= n; ++k) {
      const auto truth = oracle::tt_free_masks(n, k);
      for (auto e : {Encoding::Direct, Encoding::Cycle, Encoding::Reduced})
        EXPECT_EQ(oracle::edge_projection_models(encode(e, n, k), n), truth)
            << to_string(e) << " n=" << n << " k=" << k;
    }
}

TEST(Encodings, FixedArcModesAgree) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 4 + trial % 3;
    const int k = 3 + trial % 2;
    const auto p = random_partial(n, 0.4, rng);
    const auto truth = masks_extending(p, oracle::tt_free_masks(n, k));
    for (auto e : {Encoding::Direct, Encoding::Cycle, Encoding::Reduced})
      for (auto mode : {FixedArcs::Units, FixedArcs::Simplify})
        EXPECT_EQ(oracle::edge_projection_models(encode(e, n, k, p, mode), n), truth)
            << to_string(e) << " trial " << trial;
  }
}

TEST(Encodings, ParseNames) {
  EXPECT_EQ(parse_encoding("direct"), Encoding::Direct);
  EXPECT_EQ(parse_encoding("cycle"), Encoding::Cycle);
  EXPECT_EQ(parse_encoding("reduced"), Encoding::Reduced);
  EXPECT_THROW(parse_encoding("bogus"), Error);
  EXPECT_EQ(encode_direct(5, 4).varmap.forbidden_k, 4);
}

TEST(Pivot, LayoutAndUnits) {
  PartialTournament tt2(2);
  tt2.orient(0, 1);
  const auto fixed = pivot_fixed_arcs(tt2, tt2);
  ASSERT_EQ(fixed.order(), 5);
  EXPECT_TRUE(fixed.knows(0, 2) && fixed.knows(1, 2));
  EXPECT_TRUE(fixed.knows(2, 3) && fixed.knows(2, 4));
  EXPECT_TRUE(fixed.knows(0, 1) && fixed.knows(3, 4));
  EXPECT_FALSE(fixed.is_set(0, 3) || fixed.is_set(1, 4));
  EXPECT_EQ(fixed.unset_count(), 4);

  const auto units = pivot_instance(tt2, tt2, 4, Encoding::Direct);
  int unit_clauses = 0;
  for (const auto &c : units.clauses)
    unit_clauses += c.size() == 1;
  EXPECT_EQ(unit_clauses, 6);
}

TEST(Pivot, ThreeCycleThroughPivotIsImpossible) {
  PartialTournament cyc(3);
  cyc.orient(0, 1);
  cyc.orient(1, 2);
  cyc.orient(2, 0);
  const PartialTournament generic(1);
  for (auto e : {Encoding::Direct, Encoding::Cycle, Encoding::Reduced})
    EXPECT_TRUE(oracle::edge_projection_models(pivot_instance(cyc, generic, 3, e), 5).empty());
  EXPECT_THROW(pivot_instance(PartialTournament(40), PartialTournament(30), 5), Error);
}
