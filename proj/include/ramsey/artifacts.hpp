#pragma once

#include "ramsey/canonical.hpp"
#include "ramsey/catalog.hpp"
#include "ramsey/tournament.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace ramsey {

namespace matrices {

inline constexpr std::string_view fig2_33_matrix =
    "011110100110110001100001010100011\n"
    "000000101100100111001111011010011\n"
    "010111101001101100011000010100110\n"
    "010000001011001001110011111011001\n"
    "010101111010011011000110000100101\n"
    "110100000010110010011100111101010\n"
    "000101011110100110110001100101100\n"
    "111101000000101100100111001110100\n"
    "100001010111101001101100010000111\n"
    "001111010000001011001001111101111\n"
    "011000010101111010011011000100000\n"
    "110011110100000010110010011010110\n"
    "000110000101011110100110110101010\n"
    "011100111101000000101100101111000\n"
    "110001100001010111101001100001101\n"
    "100111001111010000001011001110100\n"
    "101100011000010101111010010100011\n"
    "001001110011110100000010111010110\n"
    "011011000110000101011110100001101\n"
    "110010011100111101000000101011001\n"
    "100110110001100001010111100101001\n"
    "101100100111001111010000001110001\n"
    "101001101100011000010101110001110\n"
    "001011001001110011110100001010101\n"
    "111010011011000110000101010001110\n"
    "000010110010011100111101001010011\n"
    "101010101010101010101010100111000\n"
    "010100001001001001110011110010110\n"
    "101011101110101010101010100000011\n"
    "111010011011000111000101010110000\n"
    "110101000010110010011100011011001\n"
    "000110110010011100111101001001100\n"
    "001001110011110101000010101101010\n";

inline constexpr std::string_view fig3_9_matrix =
    "011111101\n"
    "001011111\n"
    "000110111\n"
    "010010111\n"
    "000001011\n"
    "001100001\n"
    "000011010\n"
    "100001000\n"
    "000000110\n";

inline constexpr std::string_view y7_matrix =
    "0011111\n"
    "1000111\n"
    "0101011\n"
    "0100101\n"
    "0010010\n"
    "0001001\n"
    "0000100\n";

inline constexpr std::string_view y8_matrix =
    "00111111\n"
    "10001011\n"
    "01001101\n"
    "01100110\n"
    "00010101\n"
    "01000011\n"
    "00101000\n"
    "00010010\n";

inline constexpr std::string_view h6_matrix =
    "011111\n"
    "001111\n"
    "000111\n"
    "000010\n"
    "000001\n"
    "000100\n";

inline constexpr std::string_view h6c_matrix =
    "010111\n"
    "001111\n"
    "100111\n"
    "000011\n"
    "000001\n"
    "000000\n";

} // namespace matrices

enum class ClaimKind {
  Stated,  // asserted by the source of the matrix
  Derived, // threshold pinned by our own computation
  Info,    // computed and reported, never failing
};

inline auto to_string(ClaimKind k) -> std::string {
  switch (k) {
  case ClaimKind::Stated: return "stated";
  case ClaimKind::Derived: return "derived";
  case ClaimKind::Info: return "info";
  }
  return "?";
}

struct ClaimResult {
  bool holds = false;
  std::string observed;
};

struct Claim {
  std::string id;
  std::string description;
  ClaimKind kind = ClaimKind::Stated;
  std::function<ClaimResult(const Tournament &)> check;
};

struct NamedArtifact {
  std::string name;
  Tournament tournament;
  std::vector<Claim> claims;
};

inline auto artifact_names() -> std::vector<std::string> {
  return {"FIG2_33", "FIG3_9", "Y7", "Y8", "H6", "H6C", "QR23"};
}

namespace detail {

inline auto yes_no(bool b) -> std::string { return b ? "yes" : "no"; }

inline auto order_claim(int n) -> Claim {
  return {"order", "n = " + std::to_string(n), ClaimKind::Stated, [n](const Tournament &t) {
            return ClaimResult{t.order() == n, std::to_string(t.order())};
          }};
}

inline auto tt_free_claim(int k, ClaimKind kind = ClaimKind::Stated) -> Claim {
  return {"tt" + std::to_string(k) + "_free", "no transitive subtournament of order " + std::to_string(k), kind,
          [k](const Tournament &t) {
            const bool has = has_tt_k(t, k);
            return ClaimResult{!has, "has TT_" + std::to_string(k) + ": " + yes_no(has)};
          }};
}

inline auto has_tt_claim(int k, ClaimKind kind) -> Claim {
  return {"has_tt" + std::to_string(k), "contains a transitive subtournament of order " + std::to_string(k), kind,
          [k](const Tournament &t) {
            const bool has = has_tt_k(t, k);
            return ClaimResult{has, "has TT_" + std::to_string(k) + ": " + yes_no(has)};
          }};
}

inline auto cycles_claim(std::int64_t expected, ClaimKind kind) -> Claim {
  return {"three_cycles", "exactly " + std::to_string(expected) + " three-cycles", kind,
          [expected](const Tournament &t) {
            const auto c = count_3cycles(t);
            return ClaimResult{c == expected, std::to_string(c)};
          }};
}

inline auto equals_claim(std::string id, std::string what, std::function<Tournament()> make) -> Claim {
  return {std::move(id), "matrix equals " + what, ClaimKind::Stated, [make](const Tournament &t) {
            const bool same = t == make();
            return ClaimResult{same, "equal: " + yes_no(same)};
          }};
}

inline auto max_transitive_claim(int expected) -> Claim {
  return {"max_transitive", "largest transitive subtournament has order " + std::to_string(expected),
          ClaimKind::Stated, [expected](const Tournament &t) {
            const int m = max_transitive(t);
            return ClaimResult{m == expected, std::to_string(m)};
          }};
}

inline auto embeds_in_claim(std::string host_name, std::function<Tournament()> host, ClaimKind kind) -> Claim {
  return {"in_" + host_name, "induced subtournament of " + host_name, kind, [host](const Tournament &t) {
            const bool inside = contains_subtournament(host(), t);
            return ClaimResult{inside, "embeds: " + yes_no(inside)};
          }};
}

} // namespace detail

inline auto qr23() -> Tournament { return from_circulant(23, quadratic_residues(23)); }

/// Embedded tournament with its checkable claims. Throws UnknownName.
inline auto load_artifact(std::string_view name) -> NamedArtifact {
  using namespace detail;
  auto matrix = [](std::string_view text) { return parse_matrix(text); };
  if (name == "FIG2_33")
    return {"FIG2_33", matrix(matrices::fig2_33_matrix),
            {order_claim(33), tt_free_claim(7), has_tt_claim(6, ClaimKind::Derived)}};
  if (name == "FIG3_9")
    return {"FIG3_9", matrix(matrices::fig3_9_matrix), {order_claim(9), cycles_claim(17, ClaimKind::Derived)}};
  if (name == "Y7")
    return {"Y7",
            matrix(matrices::y7_matrix),
            {order_claim(7), cycles_claim(8, ClaimKind::Derived), embeds_in_claim("QR23", qr23, ClaimKind::Stated),
             embeds_in_claim("Y8", [] { return parse_matrix(matrices::y8_matrix); }, ClaimKind::Info),
             embeds_in_claim("FIG3_9", [] { return parse_matrix(matrices::fig3_9_matrix); }, ClaimKind::Info)}};
  if (name == "Y8")
    return {"Y8",
            matrix(matrices::y8_matrix),
            {order_claim(8), cycles_claim(15, ClaimKind::Derived), embeds_in_claim("QR23", qr23, ClaimKind::Stated),
             embeds_in_claim("FIG3_9", [] { return parse_matrix(matrices::fig3_9_matrix); }, ClaimKind::Info)}};
  if (name == "H6")
    return {"H6", matrix(matrices::h6_matrix),
            {order_claim(6), equals_claim("is_h6", "h_tournament(6)", [] { return h_tournament(6); }),
             max_transitive_claim(5)}};
  if (name == "H6C")
    return {"H6C",
            matrix(matrices::h6c_matrix),
            {order_claim(6), equals_claim("is_h6c", "h_complement(6)", [] { return h_complement(6); }),
             {"reverse_h6", "isomorphic to the reversal of H6", ClaimKind::Stated,
              [](const Tournament &t) {
                const bool iso = are_isomorphic(t, reverse(parse_matrix(matrices::h6_matrix)));
                return ClaimResult{iso, "isomorphic: " + yes_no(iso)};
              }},
             max_transitive_claim(5)}};
  if (name == "QR23")
    return {"QR23",
            qr23(),
            {order_claim(23),
             {"doubly_regular", "doubly regular with 5 common out-neighbours per pair", ClaimKind::Derived,
              [](const Tournament &t) {
                const auto p = degree_profile(t);
                const bool ok = p.is_doubly_regular && p.common_out_count == 5;
                return ClaimResult{ok, "doubly regular: " + yes_no(p.is_doubly_regular) + ", common = " +
                                           (p.common_out_count ? std::to_string(*p.common_out_count) : "-")};
              }},
             tt_free_claim(6), cycles_claim(506, ClaimKind::Stated),
             {"tt3_count", "1265 transitive triples (1771 - 506)", ClaimKind::Derived, [](const Tournament &t) {
                const auto c = count_tt3(t);
                return ClaimResult{c == 1265, std::to_string(c)};
              }}}};
  throw Error(ErrorKind::UnknownName, "unknown artifact '" + std::string(name) + "'");
}

struct ClaimOutcome {
  std::string id;
  std::string description;
  ClaimKind kind = ClaimKind::Stated;
  bool passed = false; // always true for Info claims
  std::string observed;
};

struct ArtifactReport {
  std::string name;
  std::vector<ClaimOutcome> outcomes;

  auto all_passed() const -> bool {
    return std::ranges::all_of(outcomes, [](const ClaimOutcome &o) { return o.passed; });
  }
};

inline auto verify_artifact(const NamedArtifact &a) -> ArtifactReport {
  ArtifactReport report{a.name, {}};
  for (const auto &claim : a.claims) {
    const auto r = claim.check(a.tournament);
    report.outcomes.push_back({claim.id, claim.description, claim.kind,
                               claim.kind == ClaimKind::Info || r.holds, r.observed});
  }
  return report;
}

// --- external tournament files -----------------------------------------------

enum class DbFormat { Matrix, Catalog };

inline auto parse_db_format(std::string_view name) -> DbFormat {
  if (name == "matrix")
    return DbFormat::Matrix;
  if (name == "hex" || name == "catalog")
    return DbFormat::Catalog;
  throw Error(ErrorKind::InvalidArgument, "unknown format '" + std::string(name) + "' (matrix|hex)");
}

struct ExternalDb {
  std::filesystem::path path;
  DbFormat format = DbFormat::Matrix;
  std::vector<Tournament> tournaments;
  std::optional<Catalog> catalog; // header data, for the catalog format
};

inline auto read_text_file(const std::filesystem::path &path) -> std::string {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Reads a file of tournaments in matrix text (blank-line separated blocks)
/// or catalog format. With `expected_count`, a different entry count is an
/// InvariantViolation.
inline auto parse_external_db(const std::filesystem::path &path, DbFormat format,
                              std::optional<std::size_t> expected_count = std::nullopt) -> ExternalDb {
  ExternalDb db{path, format, {}, std::nullopt};
  const auto text = read_text_file(path);
  if (format == DbFormat::Matrix) {
    db.tournaments = parse_matrices(text);
  } else {
    db.catalog = parse_catalog(text);
    db.tournaments = db.catalog->tournaments();
  }
  if (expected_count && db.tournaments.size() != *expected_count)
    throw Error(ErrorKind::InvariantViolation, path.string() + ": expected " + std::to_string(*expected_count) +
                                                   " tournaments, found " + std::to_string(db.tournaments.size()));
  return db;
}

} // namespace ramsey
