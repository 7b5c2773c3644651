#include "oracles.hpp"
#include "ramsey.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace ramsey;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::map<std::string, std::string> kv;
};

// Runs the CLI with stderr discarded and parses key=value lines.
auto run(const std::string &args) -> Run {
  const std::string cmd = std::string(RAMSEY_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe)
    return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
    r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::istringstream lines(r.out);
  for (std::string line; std::getline(lines, line);)
    if (const auto eq = line.find('='); eq != std::string::npos && !line.starts_with("#"))
      r.kv[line.substr(0, eq)] = line.substr(eq + 1);
  return r;
}

auto solver_arg() -> std::string { return "--solver " + oracle::test_solver(); }

#define REQUIRE_SOLVER()                                                                                         \
  if (oracle::test_solver().empty())                                                                             \
  GTEST_SKIP() << "no SAT solver configured"

} // namespace

TEST(Cli, BoundsEvenOrder) {
  const auto r = run("bounds --n 24 --report kv");
  ASSERT_EQ(r.code, 0) << r.out;
  // Each TT_3 has one source; out-degrees split 11/12 in the extremal case.
  std::int64_t min_tt3 = 0;
  for (int v = 0; v < 24; ++v) {
    const int d = v < 12 ? 11 : 12;
    min_tt3 += d * (d - 1) / 2;
  }
  EXPECT_EQ(r.kv.at("triples"), "2024");
  EXPECT_EQ(r.kv.at("min_tt3"), std::to_string(min_tt3));
  EXPECT_EQ(r.kv.at("max_cycles"), std::to_string(2024 - min_tt3));
  EXPECT_EQ(r.kv.at("avg_cycles_per_edge"), "572/92");
  EXPECT_EQ(r.kv.at("avg_cycles_per_edge_reduced"), "143/23");
  EXPECT_EQ(r.kv.at("avg_is_integer"), "0");
  EXPECT_EQ(r.kv.at("result"), "pass");
}

TEST(Cli, BoundsDoublyRegularOrder) {
  const auto r = run("bounds --n 23 --report kv");
  ASSERT_EQ(r.code, 0);
  const auto qr = from_circulant(23, quadratic_residues(23));
  EXPECT_EQ(r.kv.at("max_cycles"), std::to_string(oracle::brute_count_3cycles(qr)));
  EXPECT_EQ(r.kv.at("avg_cycles_per_edge"), "6");
  EXPECT_EQ(r.kv.at("doubly_regular_tt3"), std::to_string(1771 - oracle::brute_count_3cycles(qr)));
}

TEST(Cli, VerifyArtifacts) {
  const auto all = run("verify --report kv");
  EXPECT_EQ(all.code, 0);
  EXPECT_EQ(all.kv.at("result"), "pass");
  const auto one = run("verify QR23 --report kv");
  EXPECT_EQ(one.code, 0);
  EXPECT_TRUE(one.kv.contains("QR23.seconds"));
  EXPECT_FALSE(one.kv.contains("FIG2_33.seconds"));
}

TEST(Cli, VerifyDataFile) {
  const auto path = fs::temp_directory_path() / (detail::unique_stem() + ".txt");
  std::ofstream(path) << format_matrix(from_circulant(7, quadratic_residues(7))) << "\n"
                      << format_matrix(Tournament::transitive(7));
  const auto r = run("verify --in " + path.string() + " --k 4 --report kv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.kv.at("count"), "2");
  EXPECT_EQ(r.kv.at("tt4_free"), "1");
  EXPECT_EQ(r.kv.at("doubly_regular"), "1");
  EXPECT_EQ(r.kv.at("distinct_classes"), "2");
  fs::remove(path);
}

TEST(Cli, CatalogCountsAndHexOutput) {
  const auto path = fs::temp_directory_path() / (detail::unique_stem() + ".cat");
  const auto r = run("catalog --n 7 --k 4 --expect-count 1 --format hex --out " + path.string() + " --report kv");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.kv.at("count"), "1");
  const auto cat = parse_catalog(read_text_file(path.string()));
  ASSERT_EQ(cat.size(), 1U);
  EXPECT_TRUE(are_isomorphic(cat.tournaments()[0], from_circulant(7, quadratic_residues(7))));

  const auto ext = run("catalog --n 7 --k 4 --in " + path.string() + " --format hex --extend --report kv");
  EXPECT_EQ(ext.kv.at("n"), "8");
  EXPECT_EQ(ext.kv.at("count"), "0");

  EXPECT_EQ(run("catalog --n 7 --k 4 --expect-count 2").code, 1);
  fs::remove(path);
}

TEST(Cli, EncodeWritesDimacsAndVarmap) {
  const auto path = fs::temp_directory_path() / (detail::unique_stem() + ".cnf");
  ASSERT_EQ(run("encode --n 6 --k 4 --encoding cycle --out " + path.string()).code, 0);
  const auto f = parse_dimacs(read_text_file(path.string()));
  const auto map = parse_varmap(read_text_file(path.string() + ".map"));
  EXPECT_EQ(map.n, 6);
  EXPECT_TRUE(map.cycle_vars);
  EXPECT_EQ(f.var_count, 15 + 20);
  const auto stdout_only = run("encode --n 3 --k 3 --encoding direct");
  EXPECT_EQ(stdout_only.out, emit_dimacs(encode_direct(3, 3)));
  fs::remove(path);
  fs::remove(path.string() + ".map");
}

TEST(Cli, SolveEncodingAndFile) {
  REQUIRE_SOLVER();
  const auto sat = run("solve --n 7 --k 4 --expect sat --report kv " + solver_arg());
  EXPECT_EQ(sat.code, 0) << sat.out;
  EXPECT_EQ(sat.kv.at("status"), "SAT");
  EXPECT_EQ(sat.kv.at("max_transitive"), "3");
  EXPECT_EQ(run("solve --n 8 --k 4 --expect sat " + solver_arg()).code, 1);

  const auto path = fs::temp_directory_path() / (detail::unique_stem() + ".cnf");
  ASSERT_EQ(run("encode --n 7 --k 4 --out " + path.string()).code, 0);
  const auto file = run("solve --in " + path.string() + " --k 4 --expect sat --report kv " + solver_arg());
  EXPECT_EQ(file.code, 0) << file.out;
  EXPECT_EQ(file.kv.at("max_transitive"), "3");
  fs::remove(path);
  fs::remove(path.string() + ".map");
}

TEST(Cli, RamseySmallValues) {
  REQUIRE_SOLVER();
  for (const auto *enc : {"direct", "cycle", "reduced"}) {
    const auto r = run(std::string("ramsey --k 4 --expect 8 --report kv --encoding ") + enc + " " + solver_arg());
    EXPECT_EQ(r.code, 0) << enc << "\n" << r.out;
    EXPECT_EQ(r.kv.at("R"), "8");
    EXPECT_TRUE(r.kv.at("n_7").starts_with("SAT"));
  }
}

TEST(Cli, EnumerateAndPivot) {
  REQUIRE_SOLVER();
  const auto e = run("enumerate --n 7 --k 4 --encoding cycle --limit 5 --report kv " + solver_arg());
  EXPECT_EQ(e.code, 0) << e.out;
  EXPECT_EQ(e.kv.at("labelled_models"), "5");
  EXPECT_EQ(e.kv.at("classes"), "1");

  const auto path = fs::temp_directory_path() / (detail::unique_stem() + ".txt");
  std::ofstream(path) << format_matrix(from_circulant(3, {1}));
  const auto p = run("pivot --k 4 --in " + path.string() + " --right generic:3 --expect sat --report kv " +
                     solver_arg());
  EXPECT_EQ(p.code, 0) << p.out;
  EXPECT_NE(p.kv.at("instance_0").find("verified_tt4_free=1"), std::string::npos);
  fs::remove(path);
}

TEST(Cli, ErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("bounds").code, 2);
  EXPECT_EQ(run("encode --n 5 --k 4 --encoding sideways").code, 2);
  EXPECT_EQ(run("solve --n 5").code, 2);
  EXPECT_EQ(run("ramsey --k 4 --solver /nonexistent/solver").code, 2);
  EXPECT_EQ(run("catalog --n 5 --k 4 --pattern nope:3").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}
