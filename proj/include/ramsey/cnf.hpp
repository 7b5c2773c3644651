#pragma once

#include "ramsey/error.hpp"
#include "ramsey/tournament.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace ramsey {

/// Variable layout shared by every encoding: one edge variable per pair
/// i < j (true means i -> j) in lexicographic pair order, then optionally one
/// cycle variable per triple a < b < c in lexicographic triple order.
struct VarMap {
  int n = 0;
  bool cycle_vars = false;
  int forbidden_k = 0; // TT_k the formula forbids, 0 when unknown

  auto edge_count() const -> int { return static_cast<int>(choose2(n)); }
  auto cycle_count() const -> int { return cycle_vars ? static_cast<int>(choose3(n)) : 0; }
  auto var_count() const -> int { return edge_count() + cycle_count(); }

  auto edge_var(int i, int j) const -> int {
    if (i > j)
      std::swap(i, j);
    return i * (2 * n - i - 1) / 2 + (j - i - 1) + 1;
  }

  /// Literal asserting the arc from -> to.
  auto arc_lit(int from, int to) const -> int {
    return from < to ? edge_var(from, to) : -edge_var(to, from);
  }

  auto cycle_var(int a, int b, int c) const -> int {
    // Rank of {a < b < c} among triples in lexicographic order.
    auto triples_before = [&](int first) {
      std::int64_t total = 0;
      for (int x = 0; x < first; ++x)
        total += choose2(n - 1 - x);
      return total;
    };
    std::int64_t rank = triples_before(a);
    for (int y = a + 1; y < b; ++y)
      rank += n - 1 - y;
    rank += c - b - 1;
    return edge_count() + static_cast<int>(rank) + 1;
  }

  auto is_edge_var(int var) const -> bool { return var >= 1 && var <= edge_count(); }

  /// Pair (i, j), i < j, of an edge variable.
  auto edge_of(int var) const -> std::pair<int, int> {
    int rest = var - 1;
    for (int i = 0; i < n; ++i) {
      const int row = n - 1 - i;
      if (rest < row)
        return {i, i + 1 + rest};
      rest -= row;
    }
    throw Error(ErrorKind::InvalidArgument, "not an edge variable: " + std::to_string(var));
  }

  friend auto operator==(const VarMap &, const VarMap &) -> bool = default;
};

using Clause = std::vector<int>;

struct CnfFormula {
  int var_count = 0;
  std::vector<Clause> clauses;
  VarMap varmap;

  auto literal_count() const -> std::size_t {
    std::size_t total = 0;
    for (const auto &c : clauses)
      total += c.size();
    return total;
  }

  /// Throws InvariantViolation on out-of-range, duplicate or complementary
  /// literals.
  auto validate() const -> void {
    for (std::size_t i = 0; i < clauses.size(); ++i) {
      auto sorted = clauses[i];
      std::ranges::sort(sorted, [](int a, int b) { return std::abs(a) < std::abs(b) || (std::abs(a) == std::abs(b) && a < b); });
      for (std::size_t p = 0; p < sorted.size(); ++p) {
        if (sorted[p] == 0 || std::abs(sorted[p]) > var_count)
          throw Error(ErrorKind::InvariantViolation, "clause " + std::to_string(i) + ": literal out of range");
        if (p > 0 && std::abs(sorted[p]) == std::abs(sorted[p - 1]))
          throw Error(ErrorKind::InvariantViolation,
                      "clause " + std::to_string(i) + ": repeated or complementary variable");
      }
    }
  }

  /// True if every clause has a literal true under `model` (1-based).
  auto satisfied_by(const std::vector<bool> &model) const -> bool {
    return std::ranges::all_of(clauses, [&](const Clause &c) {
      return std::ranges::any_of(c, [&](int lit) {
        const auto var = static_cast<std::size_t>(std::abs(lit));
        return var < model.size() && model[var] == (lit > 0);
      });
    });
  }
};

/// Structural equality of variable count and clause lists.
inline auto same_clauses(const CnfFormula &a, const CnfFormula &b) -> bool {
  return a.var_count == b.var_count && a.clauses == b.clauses;
}

// --- DIMACS -----------------------------------------------------------------

inline auto emit_dimacs(const CnfFormula &f) -> std::string {
  std::string out = "p cnf " + std::to_string(f.var_count) + " " + std::to_string(f.clauses.size()) + "\n";
  for (const auto &c : f.clauses) {
    for (int lit : c) {
      out += std::to_string(lit);
      out.push_back(' ');
    }
    out += "0\n";
  }
  return out;
}

inline auto parse_dimacs(std::string_view text) -> CnfFormula {
  CnfFormula f;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  bool have_header = false;
  std::size_t declared_clauses = 0;
  Clause current;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == 'c' || first[0] == '%')
      continue;
    if (first == "p") {
      std::string kind;
      long long vars = -1, count = -1;
      if (have_header || !(ls >> kind >> vars >> count) || kind != "cnf" || vars < 0 || count < 0)
        throw Error(ErrorKind::ParseError, "line " + std::to_string(number) + ": bad header");
      f.var_count = static_cast<int>(vars);
      declared_clauses = static_cast<std::size_t>(count);
      have_header = true;
      continue;
    }
    if (!have_header)
      throw Error(ErrorKind::ParseError, "line " + std::to_string(number) + ": clause before header");
    std::istringstream clause_stream(line);
    long long lit = 0;
    while (clause_stream >> lit) {
      if (lit == 0) {
        f.clauses.push_back(std::move(current));
        current.clear();
      } else {
        if (std::llabs(lit) > f.var_count)
          throw Error(ErrorKind::ParseError, "line " + std::to_string(number) + ": literal exceeds declared variables");
        current.push_back(static_cast<int>(lit));
      }
    }
    if (!clause_stream.eof())
      throw Error(ErrorKind::ParseError, "line " + std::to_string(number) + ": non-integer token");
  }
  if (!have_header)
    throw Error(ErrorKind::ParseError, "missing 'p cnf' header");
  if (!current.empty())
    throw Error(ErrorKind::ParseError, "last clause is not zero-terminated");
  if (f.clauses.size() != declared_clauses)
    throw Error(ErrorKind::ParseError, "header declares " + std::to_string(declared_clauses) +
                                           " clauses, found " + std::to_string(f.clauses.size()));
  return f;
}

// --- varmap sidecar ---------------------------------------------------------

/// One line per variable: "<var> <i> <j>" or "<var> c <a> <b> <c>".
inline auto emit_varmap(const VarMap &m) -> std::string {
  std::string out;
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j)
      out += std::to_string(m.edge_var(i, j)) + " " + std::to_string(i) + " " + std::to_string(j) + "\n";
  if (m.cycle_vars)
    for (int a = 0; a < m.n; ++a)
      for (int b = a + 1; b < m.n; ++b)
        for (int c = b + 1; c < m.n; ++c)
          out += std::to_string(m.cycle_var(a, b, c)) + " c " + std::to_string(a) + " " +
                 std::to_string(b) + " " + std::to_string(c) + "\n";
  return out;
}

/// Reads a sidecar and checks it matches the standard layout.
inline auto parse_varmap(std::string_view text) -> VarMap {
  std::istringstream in{std::string(text)};
  std::string line;
  int max_vertex = -1;
  std::vector<std::pair<int, std::array<int, 3>>> edges, cycles;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream ls(line);
    int var = 0;
    if (!(ls >> var))
      continue;
    std::string tok;
    ls >> tok;
    if (tok == "c") {
      std::array<int, 3> t{};
      if (!(ls >> t[0] >> t[1] >> t[2]))
        throw Error(ErrorKind::ParseError, "line " + std::to_string(number) + ": bad cycle entry");
      cycles.push_back({var, t});
      max_vertex = std::max(max_vertex, t[2]);
    } else {
      int j = 0;
      std::istringstream again(tok);
      int i = 0;
      if (!(again >> i) || !(ls >> j))
        throw Error(ErrorKind::ParseError, "line " + std::to_string(number) + ": bad edge entry");
      edges.push_back({var, {i, j, 0}});
      max_vertex = std::max({max_vertex, i, j});
    }
  }
  VarMap m{.n = max_vertex + 1, .cycle_vars = !cycles.empty()};
  if (static_cast<int>(edges.size()) != m.edge_count() ||
      static_cast<int>(cycles.size()) != m.cycle_count())
    throw Error(ErrorKind::ParseError, "varmap does not cover every pair/triple");
  for (const auto &[var, e] : edges)
    if (e[0] >= e[1] || m.edge_var(e[0], e[1]) != var)
      throw Error(ErrorKind::ParseError, "edge variable " + std::to_string(var) + " out of layout");
  for (const auto &[var, t] : cycles)
    if (!(t[0] < t[1] && t[1] < t[2]) || m.cycle_var(t[0], t[1], t[2]) != var)
      throw Error(ErrorKind::ParseError, "cycle variable " + std::to_string(var) + " out of layout");
  return m;
}

// --- unit propagation -------------------------------------------------------

/// Values after unit propagation from `assumptions`: +1 true, -1 false,
/// 0 unassigned (index 0 unused). nullopt on conflict.
inline auto unit_propagate(const CnfFormula &f, const std::vector<int> &assumptions)
    -> std::optional<std::vector<int>> {
  std::vector<int> value(static_cast<std::size_t>(f.var_count) + 1, 0);
  auto lit_value = [&](int lit) { return lit > 0 ? value[lit] : -value[-lit]; };
  for (int lit : assumptions) {
    if (lit_value(lit) < 0)
      return std::nullopt;
    value[std::abs(lit)] = lit > 0 ? 1 : -1;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto &c : f.clauses) {
      int unassigned = 0, last = 0;
      bool sat = false;
      for (int lit : c) {
        const int v = lit_value(lit);
        if (v > 0) {
          sat = true;
          break;
        }
        if (v == 0) {
          ++unassigned;
          last = lit;
        }
      }
      if (sat)
        continue;
      if (unassigned == 0)
        return std::nullopt;
      if (unassigned == 1) {
        value[std::abs(last)] = last > 0 ? 1 : -1;
        changed = true;
      }
    }
  }
  return value;
}

} // namespace ramsey
