#include "oracles.hpp"
#include "ramsey/artifacts.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace ramsey;
namespace fs = std::filesystem;

namespace {

auto outcome(const ArtifactReport &r, std::string_view id) -> const ClaimOutcome & {
  for (const auto &o : r.outcomes)
    if (o.id == id)
      return o;
  throw std::runtime_error("no claim " + std::string(id));
}

auto temp_file(const std::string &name, const std::string &body) -> fs::path {
  const auto p = fs::temp_directory_path() / (detail::unique_stem() + "-" + name);
  std::ofstream(p) << body;
  return p;
}

} // namespace

TEST(Artifacts, EveryArtifactVerifies) {
  for (const auto &name : artifact_names()) {
    const auto a = load_artifact(name);
    EXPECT_EQ(a.name, name);
    const auto report = verify_artifact(a);
    EXPECT_TRUE(report.all_passed()) << name;
    for (const auto &o : report.outcomes)
      EXPECT_TRUE(o.passed) << name << "/" << o.id << ": " << o.observed;
  }
  EXPECT_THROW(load_artifact("NOPE"), Error);
}

TEST(Artifacts, MatricesRoundTrip) {
  for (auto text : {matrices::fig2_33_matrix, matrices::fig3_9_matrix, matrices::y7_matrix, matrices::y8_matrix,
                    matrices::h6_matrix, matrices::h6c_matrix}) {
    const auto t = parse_matrix(text);
    EXPECT_EQ(format_matrix(t), text);
  }
}

TEST(Artifacts, Fig2AgainstBruteForce) {
  const auto t = load_artifact("FIG2_33").tournament;
  EXPECT_EQ(t.order(), 33);
  EXPECT_FALSE(oracle::brute_has_tt_k(t, 7));
  EXPECT_TRUE(oracle::brute_has_tt_k(t, 6));
}

TEST(Artifacts, Qr23AgainstBruteForce) {
  const auto t = load_artifact("QR23").tournament;
  EXPECT_FALSE(oracle::brute_has_tt_k(t, 6));
  EXPECT_EQ(oracle::brute_count_3cycles(t), 506);
  // Every triple is either cyclic or transitive.
  EXPECT_EQ(count_tt3(t), 23 * 22 * 21 / 6 - 506);
  EXPECT_EQ(count_tt3(t), 1265);
  for (int x = 0; x < 23; ++x)
    for (int y = 0; y < 23; ++y)
      if (x != y)
        ASSERT_EQ((t.out(x) & t.out(y)).size(), 5);
}

TEST(Artifacts, CycleCountsAgainstBruteForce) {
  EXPECT_EQ(oracle::brute_count_3cycles(load_artifact("FIG3_9").tournament), 17);
  EXPECT_EQ(oracle::brute_count_3cycles(load_artifact("Y7").tournament), 8);
  EXPECT_EQ(oracle::brute_count_3cycles(load_artifact("Y8").tournament), 15);
}

TEST(Artifacts, HFamily) {
  EXPECT_EQ(load_artifact("H6").tournament, h_tournament(6));
  EXPECT_EQ(load_artifact("H6C").tournament, h_complement(6));
  EXPECT_TRUE(oracle::brute_isomorphic(h_complement(6), reverse(h_tournament(6))));
  for (int n = 4; n <= 9; ++n)
    EXPECT_EQ(oracle::brute_max_transitive(h_tournament(n)), n - 1) << n;
}

TEST(Artifacts, ClaimKindsAreLabelled) {
  const auto report = verify_artifact(load_artifact("Y7"));
  EXPECT_EQ(outcome(report, "order").kind, ClaimKind::Stated);
  EXPECT_EQ(to_string(ClaimKind::Derived), "derived");
  EXPECT_EQ(to_string(ClaimKind::Info), "info");
  // A failing info claim is reported, not counted.
  NamedArtifact fake{"X", Tournament::transitive(3),
                     {{"info", "never holds", ClaimKind::Info, [](const Tournament &) { return ClaimResult{}; }}}};
  EXPECT_TRUE(verify_artifact(fake).all_passed());
  fake.claims[0].kind = ClaimKind::Stated;
  EXPECT_FALSE(verify_artifact(fake).all_passed());
}

TEST(ExternalDb, MatrixAndCatalogFiles) {
  const auto matrix = temp_file("m.txt", format_matrix(h_tournament(5)) + "\n" + format_matrix(from_circulant(3, {1})));
  const auto db = parse_external_db(matrix, DbFormat::Matrix, 2);
  ASSERT_EQ(db.tournaments.size(), 2U);
  EXPECT_EQ(db.tournaments[0], h_tournament(5));
  EXPECT_THROW(parse_external_db(matrix, DbFormat::Matrix, 3), Error);

  const auto cat = temp_file("c.txt", "tournament-catalog v1 n=3 k=4 complete=1 count=1\n5\n");
  const auto c = parse_external_db(cat, parse_db_format("hex"), 1);
  ASSERT_TRUE(c.catalog);
  EXPECT_EQ(c.catalog->k, 4);
  EXPECT_EQ(c.tournaments[0], from_circulant(3, {1}));

  try {
    parse_external_db("/nonexistent/file", DbFormat::Matrix);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
  EXPECT_THROW(parse_db_format("xml"), Error);
  fs::remove(matrix);
  fs::remove(cat);
}
