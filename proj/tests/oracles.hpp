#pragma once

// Brute-force reference implementations used only by the test suites. None
// of these share code paths with the library routines they check.

#include "ramsey/cnf.hpp"
#include "ramsey/sat_runner.hpp"
#include "ramsey/tournament.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using ramsey::Tournament;

/// Tournament whose pair p (lexicographic i < j) points i -> j iff bit p of
/// `mask` is set.
inline auto tournament_from_mask(int n, std::uint64_t mask) -> Tournament {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  int p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++p) {
      if ((mask >> p) & 1U)
        m[i][j] = 1;
      else
        m[j][i] = 1;
    }
  return ramsey::from_matrix(m);
}

inline auto mask_of(const Tournament &t) -> std::uint64_t {
  std::uint64_t mask = 0;
  int p = 0;
  for (int i = 0; i < t.order(); ++i)
    for (int j = i + 1; j < t.order(); ++j, ++p)
      if (t.beats(i, j))
        mask |= std::uint64_t{1} << p;
  return mask;
}

inline auto pair_count(int n) -> int { return n * (n - 1) / 2; }

/// Definition check: a->b and b->c imply a->c on the subset.
inline auto subset_is_transitive(const Tournament &t, const std::vector<int> &s) -> bool {
  for (int a : s)
    for (int b : s)
      for (int c : s)
        if (a != b && b != c && a != c && t.beats(a, b) && t.beats(b, c) && !t.beats(a, c))
          return false;
  return true;
}

/// Largest transitive subset by trying every subset.
inline auto brute_max_transitive(const Tournament &t) -> int {
  const int n = t.order();
  int best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const int size = std::popcount(mask);
    if (size <= best)
      continue;
    std::vector<int> s;
    for (int v = 0; v < n; ++v)
      if ((mask >> v) & 1U)
        s.push_back(v);
    if (subset_is_transitive(t, s))
      best = size;
  }
  return best;
}

inline auto brute_has_tt_k(const Tournament &t, int k) -> bool {
  const int n = t.order();
  if (k > n)
    return false;
  std::vector<int> s(k);
  std::iota(s.begin(), s.end(), 0);
  for (;;) {
    if (subset_is_transitive(t, s))
      return true;
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i)
      --i;
    if (i < 0)
      return false;
    ++s[i];
    for (int j = i + 1; j < k; ++j)
      s[j] = s[j - 1] + 1;
  }
}

inline auto brute_count_3cycles(const Tournament &t) -> long long {
  long long cycles = 0;
  for (int a = 0; a < t.order(); ++a)
    for (int b = a + 1; b < t.order(); ++b)
      for (int c = b + 1; c < t.order(); ++c)
        if ((t.beats(a, b) && t.beats(b, c) && t.beats(c, a)) || (t.beats(b, a) && t.beats(c, b) && t.beats(a, c)))
          ++cycles;
  return cycles;
}

/// Isomorphism by trying all n! bijections.
inline auto brute_isomorphic(const Tournament &a, const Tournament &b) -> bool {
  if (a.order() != b.order())
    return false;
  std::vector<int> perm(a.order());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < a.order() && ok; ++i)
      for (int j = 0; j < a.order() && ok; ++j)
        if (i != j && a.beats(i, j) != b.beats(perm[i], perm[j]))
          ok = false;
    if (ok)
      return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Representatives of the isomorphism classes among `ts`, by pairwise
/// brute-force isomorphism.
inline auto iso_classes(const std::vector<Tournament> &ts) -> std::vector<Tournament> {
  std::vector<Tournament> reps;
  for (const auto &t : ts)
    if (std::ranges::none_of(reps, [&](const Tournament &r) { return brute_isomorphic(r, t); }))
      reps.push_back(t);
  return reps;
}

inline auto random_tournament(int n, std::mt19937_64 &rng) -> Tournament {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (rng() & 1U)
        m[i][j] = 1;
      else
        m[j][i] = 1;
    }
  return ramsey::from_matrix(m);
}

inline auto random_permutation(int n, std::mt19937_64 &rng) -> std::vector<int> {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Satisfiability under the partial assignment `value` (+1, -1, 0 = open),
// by plain backtracking over the open variables.
inline auto residual_satisfiable(const ramsey::CnfFormula &f, const std::vector<int> &value) -> bool {
  std::vector<int> v = value;
  auto lit_value = [&](int lit) { return lit > 0 ? v[lit] : -v[-lit]; };
  auto rec = [&](auto &self) -> bool {
    int branch = 0;
    for (const auto &c : f.clauses) {
      bool sat = false;
      int open = 0;
      for (int lit : c) {
        const int x = lit_value(lit);
        if (x > 0) {
          sat = true;
          break;
        }
        if (x == 0)
          open = lit;
      }
      if (sat)
        continue;
      if (open == 0)
        return false;
      if (branch == 0)
        branch = std::abs(open);
    }
    if (branch == 0)
      return true;
    for (int val : {1, -1}) {
      v[branch] = val;
      if (self(self))
        return true;
    }
    v[branch] = 0;
    return false;
  };
  return rec(rec);
}

/// Edge-variable assignments (as tournament masks) that extend to a model.
inline auto edge_projection_models(const ramsey::CnfFormula &f, int n) -> std::set<std::uint64_t> {
  std::set<std::uint64_t> models;
  const int pairs = pair_count(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
    std::vector<int> value(static_cast<std::size_t>(f.var_count) + 1, 0);
    for (int p = 0; p < pairs; ++p)
      value[p + 1] = ((mask >> p) & 1U) ? 1 : -1;
    if (residual_satisfiable(f, value))
      models.insert(mask);
  }
  return models;
}

/// Masks of every TT_k-free labelled tournament on n vertices.
inline auto tt_free_masks(int n, int k) -> std::set<std::uint64_t> {
  std::set<std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pair_count(n)); ++mask)
    if (!brute_has_tt_k(tournament_from_mask(n, mask), k))
      out.insert(mask);
  return out;
}

/// All models of a formula with no auxiliary variables, as full assignments.
inline auto all_models(const ramsey::CnfFormula &f) -> std::set<std::uint64_t> {
  std::set<std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.var_count); ++mask) {
    std::vector<bool> model(static_cast<std::size_t>(f.var_count) + 1);
    for (int v = 1; v <= f.var_count; ++v)
      model[v] = (mask >> (v - 1)) & 1U;
    if (f.satisfied_by(model))
      out.insert(mask);
  }
  return out;
}

inline auto clause_set(const std::vector<ramsey::Clause> &clauses) -> std::multiset<std::vector<int>> {
  std::multiset<std::vector<int>> out;
  for (auto c : clauses) {
    std::ranges::sort(c);
    out.insert(c);
  }
  return out;
}

inline auto test_solver() -> std::string {
  if (const char *env = std::getenv(ramsey::solver_env_var); env && *env)
    return env;
#ifdef RAMSEY_DEFAULT_SOLVER
  return RAMSEY_DEFAULT_SOLVER;
#else
  return {};
#endif
}

} // namespace oracle
