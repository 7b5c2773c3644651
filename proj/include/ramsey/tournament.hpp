#pragma once

#include "ramsey/error.hpp"
#include "ramsey/vertex_set.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ramsey {

using Rational = boost::rational<std::int64_t>;

inline constexpr auto choose2(std::int64_t n) -> std::int64_t { return n * (n - 1) / 2; }
inline constexpr auto choose3(std::int64_t n) -> std::int64_t { return n * (n - 1) * (n - 2) / 6; }

/// Complete orientation on n labelled vertices; bit j of row i means i -> j.
///
/// Values are immutable once built. Every factory validates the tournament
/// invariants (no loops, exactly one arc per pair), so holders of a
/// Tournament never need to re-check them.
class Tournament {
public:
  using Rows = std::array<std::uint64_t, max_order>;

  /// Builds from out-neighbourhood bit rows. Throws Error on any invariant
  /// violation.
  static auto from_rows(int n, std::span<const std::uint64_t> rows) -> Tournament {
    if (n < 2 || n > max_order)
      throw Error(ErrorKind::BadOrder, "order must lie in 2..64, got " + std::to_string(n));
    if (static_cast<int>(rows.size()) != n)
      throw Error(ErrorKind::NotSquare, "expected " + std::to_string(n) + " rows");
    Tournament t;
    t.n_ = n;
    const auto all = VertexSet::range(n).bits();
    for (int i = 0; i < n; ++i) {
      if (rows[i] & ~all)
        throw Error(ErrorKind::NotSquare, "row " + std::to_string(i) + " has bits beyond column n-1");
      t.rows_[i] = rows[i];
    }
    t.validate();
    return t;
  }

  /// The transitive tournament TT_n on 0..n-1 with i -> j for i < j.
  static auto transitive(int n) -> Tournament {
    std::vector<std::uint64_t> rows(n);
    for (int i = 0; i < n; ++i)
      rows[i] = VertexSet::range(n).bits() & ~VertexSet::range(i + 1).bits();
    return from_rows(n, rows);
  }

  auto order() const -> int { return n_; }
  auto beats(int i, int j) const -> bool { return (rows_[i] >> j) & 1U; }
  auto out(int i) const -> VertexSet { return VertexSet(rows_[i]); }
  auto in(int i) const -> VertexSet {
    return VertexSet::range(n_) - VertexSet(rows_[i]) - VertexSet::single(i);
  }
  auto out_degree(int i) const -> int { return out(i).size(); }
  auto vertices() const -> VertexSet { return VertexSet::range(n_); }
  auto rows() const -> std::span<const std::uint64_t> { return {rows_.data(), static_cast<std::size_t>(n_)}; }

  friend auto operator==(const Tournament &a, const Tournament &b) -> bool {
    return a.n_ == b.n_ && std::equal(a.rows_.begin(), a.rows_.begin() + a.n_, b.rows_.begin());
  }

private:
  Tournament() = default;

  auto validate() const -> void {
    std::int64_t arcs = 0;
    for (int i = 0; i < n_; ++i) {
      if (beats(i, i))
        throw Error(ErrorKind::SelfLoop, "vertex " + std::to_string(i));
      for (int j = i + 1; j < n_; ++j)
        if (beats(i, j) == beats(j, i))
          throw Error(ErrorKind::NotAntisymmetric,
                      "pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
      arcs += out_degree(i);
    }
    if (arcs != choose2(n_))
      throw Error(ErrorKind::InvariantViolation, "arc count mismatch");
  }

  int n_ = 0;
  Rows rows_{};
};

/// Builds a tournament from a square 0/1 matrix.
inline auto from_matrix(const std::vector<std::vector<int>> &matrix) -> Tournament {
  const int n = static_cast<int>(matrix.size());
  if (n > max_order)
    throw Error(ErrorKind::BadOrder, "order exceeds 64");
  std::vector<std::uint64_t> rows(n, 0);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(matrix[i].size()) != n)
      throw Error(ErrorKind::NotSquare, "row " + std::to_string(i) + " has length " +
                                            std::to_string(matrix[i].size()));
    for (int j = 0; j < n; ++j) {
      if (matrix[i][j] != 0 && matrix[i][j] != 1)
        throw Error(ErrorKind::ParseError, "entries must be 0 or 1");
      if (matrix[i][j])
        rows[i] |= std::uint64_t{1} << j;
    }
  }
  return Tournament::from_rows(n, rows);
}

// --- matrix text format -----------------------------------------------------

namespace detail {

inline auto matrix_lines(std::string_view text) -> std::vector<std::pair<int, std::string>> {
  std::vector<std::pair<int, std::string>> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#')
      continue;
    line = line.substr(first, line.find_last_not_of(" \t") - first + 1);
    for (char c : line)
      if (c != '0' && c != '1')
        throw Error(ErrorKind::ParseError,
                    "line " + std::to_string(number) + ": unexpected character '" + c + "'");
    lines.emplace_back(number, std::move(line));
  }
  return lines;
}

inline auto rows_to_tournament(std::span<const std::pair<int, std::string>> block) -> Tournament {
  const int n = static_cast<int>(block.size());
  std::vector<std::vector<int>> m(n);
  for (int i = 0; i < n; ++i) {
    const auto &[number, row] = block[i];
    if (static_cast<int>(row.size()) != n)
      throw Error(ErrorKind::NotSquare, "line " + std::to_string(number) + ": expected " +
                                            std::to_string(n) + " columns");
    for (char c : row)
      m[i].push_back(c - '0');
  }
  return from_matrix(m);
}

} // namespace detail

/// Parses one tournament in matrix text format: n lines of n characters from
/// {0,1}; blank lines and '#' comment lines are skipped.
inline auto parse_matrix(std::string_view text) -> Tournament {
  const auto lines = detail::matrix_lines(text);
  if (lines.empty())
    throw Error(ErrorKind::ParseError, "no matrix rows");
  const auto n = lines.front().second.size();
  if (lines.size() != n)
    throw Error(ErrorKind::NotSquare, "expected " + std::to_string(n) + " rows, found " +
                                          std::to_string(lines.size()));
  return detail::rows_to_tournament(lines);
}

/// Parses a sequence of matrices. Each matrix's order is taken from the
/// width of its first row, so consecutive matrices need no separator.
inline auto parse_matrices(std::string_view text) -> std::vector<Tournament> {
  const auto lines = detail::matrix_lines(text);
  std::vector<Tournament> result;
  std::size_t at = 0;
  while (at < lines.size()) {
    const auto n = lines[at].second.size();
    if (at + n > lines.size())
      throw Error(ErrorKind::ParseError, "line " + std::to_string(lines.back().first) +
                                             ": truncated matrix (needs " + std::to_string(n) +
                                             " rows from line " + std::to_string(lines[at].first) + ")");
    result.push_back(detail::rows_to_tournament(std::span(lines).subspan(at, n)));
    at += n;
  }
  return result;
}

inline auto format_matrix(const Tournament &t) -> std::string {
  std::string out;
  out.reserve(static_cast<std::size_t>(t.order()) * (t.order() + 1));
  for (int i = 0; i < t.order(); ++i) {
    for (int j = 0; j < t.order(); ++j)
      out.push_back(t.beats(i, j) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

// --- constructions ----------------------------------------------------------

/// Non-zero squares modulo an odd prime p.
inline auto quadratic_residues(int p) -> std::set<int> {
  auto is_prime = [](int q) {
    if (q < 2)
      return false;
    for (int d = 2; d * d <= q; ++d)
      if (q % d == 0)
        return false;
    return true;
  };
  if (p % 2 == 0 || !is_prime(p))
    throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not an odd prime");
  std::set<int> residues;
  for (long long x = 1; x < p; ++x)
    residues.insert(static_cast<int>(x * x % p));
  return residues;
}

/// Circulant tournament on Z_n: u -> v iff (v - u) mod n lies in `residues`.
inline auto from_circulant(int n, const std::set<int> &residues) -> Tournament {
  if (n < 2 || n > max_order)
    throw Error(ErrorKind::BadOrder, "order must lie in 2..64");
  for (int r : residues)
    if (r <= 0 || r >= n)
      throw Error(ErrorKind::NotTournamentResidueSet, "residue " + std::to_string(r) + " outside 1..n-1");
  for (int x = 1; x < n; ++x)
    if (residues.contains(x) == residues.contains(n - x))
      throw Error(ErrorKind::NotTournamentResidueSet,
                  "exactly one of " + std::to_string(x) + " and " + std::to_string(n - x) +
                      " must be a residue");
  std::vector<std::uint64_t> rows(n, 0);
  for (int u = 0; u < n; ++u)
    for (int r : residues)
      rows[u] |= std::uint64_t{1} << ((u + r) % n);
  return Tournament::from_rows(n, rows);
}

/// Relabels vertex i as perm[i].
inline auto relabel(const Tournament &t, std::span<const int> perm) -> Tournament {
  const int n = t.order();
  std::vector<std::uint64_t> rows(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j : t.out(i))
      rows[perm[i]] |= std::uint64_t{1} << perm[j];
  return Tournament::from_rows(n, rows);
}

/// Subtournament induced by `keep`, relabelled 0.. in increasing vertex order.
inline auto induced(const Tournament &t, VertexSet keep) -> Tournament {
  std::vector<int> index(t.order(), -1);
  int next = 0;
  for (int v : keep)
    index[v] = next++;
  std::vector<std::uint64_t> rows(next, 0);
  for (int v : keep)
    for (int w : t.out(v) & keep)
      rows[index[v]] |= std::uint64_t{1} << index[w];
  return Tournament::from_rows(next, rows);
}

inline auto reverse(const Tournament &t) -> Tournament {
  std::vector<std::uint64_t> rows(t.order());
  for (int i = 0; i < t.order(); ++i)
    rows[i] = t.in(i).bits();
  return Tournament::from_rows(t.order(), rows);
}

/// H_n: a transitive order on 0..n-4 in which every vertex beats the
/// 3-cycle (n-3 -> n-2 -> n-1 -> n-3).
inline auto h_tournament(int n) -> Tournament {
  if (n < 4)
    throw Error(ErrorKind::OrderTooSmall, "H_n needs n >= 4");
  std::vector<std::uint64_t> rows(n, 0);
  for (int i = 0; i < n - 3; ++i)
    rows[i] = VertexSet::range(n).bits() & ~VertexSet::range(i + 1).bits();
  const int a = n - 3, b = n - 2, c = n - 1;
  rows[a] = VertexSet::single(b).bits();
  rows[b] = VertexSet::single(c).bits();
  rows[c] = VertexSet::single(a).bits();
  return Tournament::from_rows(n, rows);
}

/// H_n^c in the labelling used for the displayed 6-vertex matrix: the 3-cycle
/// 0 -> 1 -> 2 -> 0 beats a transitive order on 3..n-1. Isomorphic to
/// reverse(h_tournament(n)).
inline auto h_complement(int n) -> Tournament {
  if (n < 4)
    throw Error(ErrorKind::OrderTooSmall, "H_n^c needs n >= 4");
  std::vector<std::uint64_t> rows(n, 0);
  const auto tail = VertexSet::range(n) - VertexSet::range(3);
  rows[0] = (VertexSet::single(1) | tail).bits();
  rows[1] = (VertexSet::single(2) | tail).bits();
  rows[2] = (VertexSet::single(0) | tail).bits();
  for (int i = 3; i < n; ++i)
    rows[i] = VertexSet::range(n).bits() & ~VertexSet::range(i + 1).bits();
  return Tournament::from_rows(n, rows);
}

// --- degrees and counting ---------------------------------------------------

struct DegreeProfile {
  std::vector<int> out_degrees; // indexed by vertex
  bool is_regular = false;
  bool is_doubly_regular = false;
  std::optional<int> common_out_count; // set when uniform over ordered pairs
};

inline auto degree_profile(const Tournament &t) -> DegreeProfile {
  const int n = t.order();
  DegreeProfile p;
  for (int v = 0; v < n; ++v)
    p.out_degrees.push_back(t.out_degree(v));
  p.is_regular = n % 2 == 1 &&
                 std::ranges::all_of(p.out_degrees, [&](int d) { return d == (n - 1) / 2; });
  std::optional<int> common;
  bool uniform = true;
  for (int a = 0; a < n && uniform; ++a)
    for (int b = 0; b < n && uniform; ++b) {
      if (a == b)
        continue;
      const int c = (t.out(a) & t.out(b)).size();
      if (!common)
        common = c;
      else if (*common != c)
        uniform = false;
    }
  if (uniform)
    p.common_out_count = common;
  p.is_doubly_regular = p.is_regular && uniform && n % 4 == 3 && common == (n - 3) / 4;
  return p;
}

/// Number of transitive triples: sum over vertices of C(outdeg, 2).
inline auto count_tt3(const Tournament &t) -> std::int64_t {
  std::int64_t total = 0;
  for (int v = 0; v < t.order(); ++v)
    total += choose2(t.out_degree(v));
  return total;
}

inline auto count_3cycles(const Tournament &t) -> std::int64_t {
  return choose3(t.order()) - count_tt3(t);
}

/// Upper bound on the number of 3-cycles in any n-vertex tournament, attained
/// by the most regular score sequence.
inline auto max_3cycles_bound(int n) -> Rational {
  if (n < 3)
    throw Error(ErrorKind::OrderTooSmall, "n must be at least 3");
  const std::int64_t m = n;
  if (m % 2 == 1)
    return Rational(m * (m + 1) * (m - 1), 24);
  const std::int64_t half = m / 2;
  return Rational(choose3(m) - half * choose2(half) - half * choose2(half - 1));
}

/// Arithmetic behind the |D| cap of the block decomposition.
struct CycleBounds {
  int n = 0;
  std::int64_t min_tt3 = 0;
  Rational max_cycles;
  Rational avg_cycles_per_edge;
  std::int64_t d_cap = 0; // floor(avg_cycles_per_edge)
};

inline auto cycle_bounds(int n) -> CycleBounds {
  CycleBounds b;
  b.n = n;
  b.max_cycles = max_3cycles_bound(n);
  b.min_tt3 = choose3(n) - boost::rational_cast<std::int64_t>(b.max_cycles);
  b.avg_cycles_per_edge = b.max_cycles * 3 / choose2(n);
  b.d_cap = b.avg_cycles_per_edge.numerator() / b.avg_cycles_per_edge.denominator();
  return b;
}

// --- transitive subtournaments ----------------------------------------------

namespace detail {

// True if `cand` holds a chain of `need` vertices, each beating all later ones.
// Vertices whose onward candidate set is smallest are tried first.
inline auto chain_exists(std::span<const std::uint64_t> rows, VertexSet cand, int need) -> bool {
  if (need <= 0)
    return true;
  if (cand.size() < need)
    return false;
  if (need == 1)
    return true;
  std::array<std::pair<int, int>, max_order> order{};
  int count = 0;
  for (int v : cand) {
    const int onward = (cand & VertexSet(rows[v])).size();
    if (onward >= need - 1)
      order[count++] = {onward, v};
  }
  std::sort(order.begin(), order.begin() + count);
  for (int i = 0; i < count; ++i) {
    const int v = order[i].second;
    if (chain_exists(rows, cand & VertexSet(rows[v]), need - 1))
      return true;
  }
  return false;
}

inline auto longest_chain(std::span<const std::uint64_t> rows, VertexSet cand, int depth, int &best) -> void {
  if (cand.empty()) {
    best = std::max(best, depth);
    return;
  }
  for (int v : cand) {
    const auto onward = cand & VertexSet(rows[v]);
    if (depth + 1 + onward.size() <= best)
      continue;
    longest_chain(rows, onward, depth + 1, best);
  }
}

} // namespace detail

/// True if the vertices in `s` induce a transitive subtournament.
inline auto is_transitive_set(const Tournament &t, VertexSet s) -> bool {
  // Transitive iff the inner out-degrees are pairwise distinct.
  std::uint64_t seen = 0;
  for (int v : s) {
    const int d = (t.out(v) & s).size();
    if ((seen >> d) & 1U)
      return false;
    seen |= std::uint64_t{1} << d;
  }
  return true;
}

inline auto has_tt_k(const Tournament &t, int k) -> bool {
  return detail::chain_exists(t.rows(), t.vertices(), k);
}

/// Order of the largest transitive subtournament.
inline auto max_transitive(const Tournament &t) -> int {
  int best = 0;
  detail::longest_chain(t.rows(), t.vertices(), 0, best);
  return best;
}

// --- embedding --------------------------------------------------------------

namespace detail {

inline auto embed(const Tournament &host, const Tournament &pattern, std::span<const int> order,
                  std::span<int> image, int depth, VertexSet used) -> bool {
  if (depth == pattern.order())
    return true;
  const int s = order[depth];
  auto cand = host.vertices() - used;
  for (int d = 0; d < depth; ++d) {
    const int prev = order[d];
    cand &= pattern.beats(prev, s) ? host.out(image[prev]) : host.in(image[prev]);
  }
  const int out_need = pattern.out_degree(s);
  const int in_need = pattern.order() - 1 - out_need;
  for (int h : cand) {
    if (host.out_degree(h) < out_need || host.order() - 1 - host.out_degree(h) < in_need)
      continue;
    image[s] = h;
    if (embed(host, pattern, order, image, depth + 1, used | VertexSet::single(h)))
      return true;
  }
  return false;
}

} // namespace detail

/// True iff some vertex subset of `host` induces a copy of `pattern`.
inline auto contains_subtournament(const Tournament &host, const Tournament &pattern) -> bool {
  if (pattern.order() > host.order())
    return false;
  // Most constrained pattern vertices first: extreme degrees narrow the host
  // candidates fastest.
  std::vector<int> order(pattern.order());
  for (int i = 0; i < pattern.order(); ++i)
    order[i] = i;
  const int mid2 = pattern.order() - 1;
  std::ranges::stable_sort(order, [&](int a, int b) {
    return std::abs(2 * pattern.out_degree(a) - mid2) > std::abs(2 * pattern.out_degree(b) - mid2);
  });
  std::vector<int> image(pattern.order(), -1);
  return detail::embed(host, pattern, order, image, 0, VertexSet{});
}

} // namespace ramsey
