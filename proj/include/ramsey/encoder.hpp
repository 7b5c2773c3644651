#pragma once

#include "ramsey/cnf.hpp"
#include "ramsey/partial.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ramsey {

enum class Encoding { Direct, Cycle, Reduced };

inline auto to_string(Encoding e) -> std::string {
  switch (e) {
  case Encoding::Direct: return "direct";
  case Encoding::Cycle: return "cycle";
  case Encoding::Reduced: return "reduced";
  }
  return "?";
}

inline auto parse_encoding(std::string_view name) -> Encoding {
  if (name == "direct") return Encoding::Direct;
  if (name == "cycle") return Encoding::Cycle;
  if (name == "reduced") return Encoding::Reduced;
  throw Error(ErrorKind::InvalidArgument, "unknown encoding '" + std::string(name) + "'");
}

/// How fixed arcs enter a formula. Both modes emit one unit clause per fixed
/// arc. `Simplify` additionally omits pattern clauses those units satisfy and
/// drops literals they falsify, which keeps instances with large fixed
/// regions tractable.
enum class FixedArcs { Units, Simplify };

namespace detail {

inline auto check_encode_args(int n, int k, const PartialTournament &fixed) -> void {
  if (k < 3)
    throw Error(ErrorKind::KTooSmall, "k must be at least 3, got " + std::to_string(k));
  if (k > n)
    throw Error(ErrorKind::InvalidArgument, "k exceeds n");
  if (n > max_order)
    throw Error(ErrorKind::SizeOverflow, "n exceeds 64");
  if (fixed.order() != n)
    throw Error(ErrorKind::InvalidArgument, "fixed arcs are on a different vertex count");
}

inline auto append_units(CnfFormula &f, const PartialTournament &fixed) -> void {
  for (int i = 0; i < fixed.order(); ++i)
    for (int j = i + 1; j < fixed.order(); ++j)
      if (fixed.is_set(i, j))
        f.clauses.push_back({fixed.knows(i, j) ? f.varmap.edge_var(i, j) : -f.varmap.edge_var(i, j)});
}

// Calls fn(subset) for every k-subset of 0..n-1 in lexicographic order.
template <typename Fn>
auto for_each_subset(int n, int k, Fn &&fn) -> void {
  std::vector<int> s(k);
  for (int i = 0; i < k; ++i)
    s[i] = i;
  for (;;) {
    fn(std::as_const(s));
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i)
      --i;
    if (i < 0)
      return;
    ++s[i];
    for (int j = i + 1; j < k; ++j)
      s[j] = s[j - 1] + 1;
  }
}

// Orderings of `subset` (position 0 beats every later position), listed in
// lexicographic order of the reversed sequence: the sink varies slowest.
// With `fixed`, orderings contradicting a known arc are skipped.
template <typename Fn>
auto for_each_transitive_ordering(const std::vector<int> &subset, const PartialTournament *fixed, Fn &&fn) -> void {
  const int k = static_cast<int>(subset.size());
  std::vector<int> order(k);
  std::vector<bool> used(k, false);
  auto place = [&](auto &self, int pos) -> void {
    if (pos < 0) {
      fn(std::as_const(order));
      return;
    }
    for (int idx = 0; idx < k; ++idx) {
      if (used[idx])
        continue;
      const int x = subset[idx];
      if (fixed) {
        bool consistent = true;
        for (int later = pos + 1; later < k && consistent; ++later)
          consistent = !fixed->knows(order[later], x);
        if (!consistent)
          continue;
      }
      used[idx] = true;
      order[pos] = x;
      self(self, pos - 1);
      used[idx] = false;
    }
  };
  place(place, k - 1);
}

inline auto sort_by_var(Clause &c) -> void {
  std::ranges::sort(c, [](int a, int b) { return std::abs(a) < std::abs(b); });
}

} // namespace detail

/// One clause per ordered k-tuple, negating the transitive orientation that
/// tuple describes, plus unit clauses for fixed arcs.
inline auto encode_direct(int n, int k, const PartialTournament &fixed, FixedArcs mode = FixedArcs::Units)
    -> CnfFormula {
  detail::check_encode_args(n, k, fixed);
  CnfFormula f;
  f.varmap = VarMap{.n = n, .cycle_vars = false, .forbidden_k = k};
  f.var_count = f.varmap.var_count();
  const bool simplify = mode == FixedArcs::Simplify;
  detail::for_each_subset(n, k, [&](const std::vector<int> &subset) {
    detail::for_each_transitive_ordering(subset, simplify ? &fixed : nullptr, [&](const std::vector<int> &order) {
      Clause c;
      c.reserve(static_cast<std::size_t>(choose2(k)));
      for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
          if (simplify && fixed.knows(order[a], order[b]))
            continue; // literal falsified by a unit
          c.push_back(-f.varmap.arc_lit(order[a], order[b]));
        }
      detail::sort_by_var(c);
      f.clauses.push_back(std::move(c));
    });
  });
  detail::append_units(f, fixed);
  return f;
}

inline auto encode_direct(int n, int k) -> CnfFormula { return encode_direct(n, k, PartialTournament(n)); }

/// Cycle-variable encoding: c_{abc} implies a directed 3-cycle on {a,b,c};
/// every k-subset must contain one of its cycle variables.
inline auto encode_cycle(int n, int k, const PartialTournament &fixed, FixedArcs mode = FixedArcs::Units)
    -> CnfFormula {
  detail::check_encode_args(n, k, fixed);
  CnfFormula f;
  f.varmap = VarMap{.n = n, .cycle_vars = true, .forbidden_k = k};
  f.var_count = f.varmap.var_count();
  const auto &m = f.varmap;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        const int t = m.cycle_var(a, b, c);
        const int ab = m.edge_var(a, b), ac = m.edge_var(a, c), bc = m.edge_var(b, c);
        f.clauses.push_back({-t, ab, ac});
        f.clauses.push_back({-t, -ab, bc});
        f.clauses.push_back({-t, -ac, -bc});
      }

  const bool simplify = mode == FixedArcs::Simplify;
  // Fully fixed triple: +1 cyclic, -1 transitive, 0 otherwise.
  auto fixed_triple = [&](int a, int b, int c) {
    if (!fixed.is_set(a, b) || !fixed.is_set(a, c) || !fixed.is_set(b, c))
      return 0;
    // Cyclic iff every vertex has out-degree 1 inside the triple; checking
    // two of them suffices.
    const int da = fixed.known_out(a).contains(b) + fixed.known_out(a).contains(c);
    const int db = fixed.known_out(b).contains(a) + fixed.known_out(b).contains(c);
    return da == 1 && db == 1 ? 1 : -1;
  };
  detail::for_each_subset(n, k, [&](const std::vector<int> &s) {
    Clause c;
    bool satisfied = false;
    for (int x = 0; x < k && !satisfied; ++x)
      for (int y = x + 1; y < k && !satisfied; ++y)
        for (int z = y + 1; z < k && !satisfied; ++z) {
          const int status = simplify ? fixed_triple(s[x], s[y], s[z]) : 0;
          if (status > 0)
            satisfied = true;
          else if (status == 0)
            c.push_back(m.cycle_var(s[x], s[y], s[z]));
        }
    if (!satisfied)
      f.clauses.push_back(std::move(c));
  });
  detail::append_units(f, fixed);
  return f;
}

inline auto encode_cycle(int n, int k) -> CnfFormula { return encode_cycle(n, k, PartialTournament(n)); }

namespace detail {

// Self-subsuming resolution and subsumption to a fixpoint.
//
// Two alternating phases:
//  - merge: clauses C v x and C v -x (same variable set) resolve to C. Clauses
//    are scanned in order and each pairs with its earliest partner, at most one
//    merge per clause per pass.
//  - general: for each clause C, every D with C \ {x} subset of D \ {-x} loses
//    -x, and every D containing C is deleted. Candidates come from the
//    occurrence list of C's rarest variable, filtered by a variable signature.
class SelfSubsumer {
public:
  explicit SelfSubsumer(std::vector<Clause> clauses) : clauses_(std::move(clauses)), alive_(clauses_.size(), true) {
    for (auto &c : clauses_)
      sort_by_var(c);
  }

  auto run() -> std::vector<Clause> {
    for (;;) {
      while (merge_pass()) {
      }
      if (!general_pass())
        break;
    }
    std::vector<Clause> out;
    for (std::size_t i = 0; i < clauses_.size(); ++i)
      if (alive_[i])
        out.push_back(std::move(clauses_[i]));
    return out;
  }

private:
  struct KeyHash {
    auto operator()(const Clause &c) const -> std::size_t {
      std::size_t h = 1469598103934665603ULL;
      for (int lit : c)
        h = (h ^ static_cast<std::size_t>(static_cast<std::uint32_t>(lit))) * 1099511628211ULL;
      return h;
    }
  };

  auto merge_pass() -> bool {
    std::unordered_map<Clause, std::size_t, KeyHash> index;
    index.reserve(clauses_.size());
    bool changed = false;
    for (std::size_t i = 0; i < clauses_.size(); ++i) {
      if (!alive_[i])
        continue;
      auto [it, fresh] = index.try_emplace(clauses_[i], i);
      if (!fresh) {
        alive_[i] = false; // duplicate
        changed = true;
      }
    }
    std::vector<bool> used(clauses_.size(), false);
    for (std::size_t i = 0; i < clauses_.size(); ++i) {
      if (!alive_[i] || used[i])
        continue;
      std::size_t best = clauses_.size();
      std::size_t best_pos = 0;
      Clause probe = clauses_[i];
      for (std::size_t p = 0; p < probe.size(); ++p) {
        probe[p] = -probe[p];
        if (auto it = index.find(probe); it != index.end()) {
          const auto j = it->second;
          if (j != i && alive_[j] && !used[j] && j < best) {
            best = j;
            best_pos = p;
          }
        }
        probe[p] = -probe[p];
      }
      if (best == clauses_.size())
        continue;
      clauses_[i].erase(clauses_[i].begin() + static_cast<std::ptrdiff_t>(best_pos));
      alive_[best] = false;
      used[i] = used[best] = true;
      changed = true;
    }
    return changed;
  }

  auto general_pass() -> bool {
    int max_var = 0;
    for (std::size_t i = 0; i < clauses_.size(); ++i)
      if (alive_[i])
        for (int lit : clauses_[i])
          max_var = std::max(max_var, std::abs(lit));
    std::vector<std::vector<std::size_t>> occ(static_cast<std::size_t>(max_var) + 1);
    std::vector<std::uint64_t> sig(clauses_.size(), 0);
    for (std::size_t i = 0; i < clauses_.size(); ++i) {
      if (!alive_[i])
        continue;
      for (int lit : clauses_[i]) {
        occ[std::abs(lit)].push_back(i);
        sig[i] |= std::uint64_t{1} << (std::abs(lit) % 64);
      }
    }
    std::vector<int> mark(static_cast<std::size_t>(max_var) + 1, 0);
    bool changed = false;
    for (std::size_t i = 0; i < clauses_.size(); ++i) {
      if (!alive_[i] || clauses_[i].empty())
        continue;
      const auto &ci = clauses_[i];
      int pivot = std::abs(ci.front());
      for (int lit : ci)
        if (occ[std::abs(lit)].size() < occ[pivot].size())
          pivot = std::abs(lit);
      for (int lit : ci)
        mark[std::abs(lit)] = lit > 0 ? 1 : -1;
      for (std::size_t j : occ[pivot]) {
        if (j == i || !alive_[j] || clauses_[j].size() < ci.size() || (sig[i] & ~sig[j]) != 0)
          continue;
        std::size_t same = 0, flipped = 0;
        int flip_lit = 0;
        for (int lit : clauses_[j]) {
          const int m = mark[std::abs(lit)];
          if (m == 0)
            continue;
          if ((m > 0) == (lit > 0)) {
            ++same;
          } else {
            ++flipped;
            flip_lit = lit;
          }
        }
        if (same + flipped != ci.size() || flipped > 1)
          continue;
        if (flipped == 0) {
          alive_[j] = false;
        } else {
          std::erase(clauses_[j], flip_lit);
          sig[j] = 0;
          for (int lit : clauses_[j])
            sig[j] |= std::uint64_t{1} << (std::abs(lit) % 64);
        }
        changed = true;
      }
      for (int lit : ci)
        mark[std::abs(lit)] = 0;
    }
    return changed;
  }

  std::vector<Clause> clauses_;
  std::vector<bool> alive_;
};

} // namespace detail

/// Self-subsuming resolution plus subsumption, run to a fixpoint. The result
/// is logically equivalent to the input.
inline auto self_subsume(const CnfFormula &f) -> CnfFormula {
  CnfFormula out;
  out.var_count = f.var_count;
  out.varmap = f.varmap;
  out.clauses = detail::SelfSubsumer(f.clauses).run();
  return out;
}

/// Direct encoding reduced by self_subsume; fixed-arc units are appended
/// after the reduction.
inline auto encode_reduced(int n, int k, const PartialTournament &fixed, FixedArcs mode = FixedArcs::Units)
    -> CnfFormula {
  detail::check_encode_args(n, k, fixed);
  CnfFormula pattern = mode == FixedArcs::Simplify
                           ? encode_direct(n, k, fixed, FixedArcs::Simplify)
                           : encode_direct(n, k, PartialTournament(n));
  if (mode == FixedArcs::Simplify)
    pattern.clauses.resize(pattern.clauses.size() - static_cast<std::size_t>(choose2(n) - fixed.unset_count()));
  CnfFormula f = self_subsume(pattern);
  detail::append_units(f, fixed);
  return f;
}

inline auto encode_reduced(int n, int k) -> CnfFormula { return encode_reduced(n, k, PartialTournament(n)); }

inline auto encode(Encoding e, int n, int k, const PartialTournament &fixed, FixedArcs mode = FixedArcs::Units)
    -> CnfFormula {
  switch (e) {
  case Encoding::Direct: return encode_direct(n, k, fixed, mode);
  case Encoding::Cycle: return encode_cycle(n, k, fixed, mode);
  case Encoding::Reduced: return encode_reduced(n, k, fixed, mode);
  }
  throw Error(ErrorKind::InvalidArgument, "bad encoding");
}

inline auto encode(Encoding e, int n, int k) -> CnfFormula { return encode(e, n, k, PartialTournament(n)); }

/// Vertex layout of a pivot instance X -> 1 -> Y: X occupies 0..|X|-1, the
/// pivot is |X|, and Y follows.
struct PivotLayout {
  int in_size = 0;
  int out_size = 0;
  auto pivot() const -> int { return in_size; }
  auto out_offset() const -> int { return in_size + 1; }
  auto order() const -> int { return in_size + out_size + 1; }
};

/// Fixed arcs of the pivot instance: X -> pivot -> Y, plus whatever arcs
/// the two sides fix internally. Arcs between X and Y stay free.
inline auto pivot_fixed_arcs(const PartialTournament &inn, const PartialTournament &out) -> PartialTournament {
  const PivotLayout layout{inn.order(), out.order()};
  if (layout.order() > max_order)
    throw Error(ErrorKind::SizeOverflow, "pivot instance has " + std::to_string(layout.order()) + " > 64 vertices");
  PartialTournament fixed(layout.order());
  for (int i = 0; i < inn.order(); ++i) {
    fixed.orient(i, layout.pivot());
    for (int j : inn.known_out(i))
      fixed.orient(i, j);
  }
  for (int i = 0; i < out.order(); ++i) {
    fixed.orient(layout.pivot(), layout.out_offset() + i);
    for (int j : out.known_out(i))
      fixed.orient(layout.out_offset() + i, layout.out_offset() + j);
  }
  return fixed;
}

/// Instance "X extends through a pivot to Y" forbidding TT_k globally.
inline auto pivot_instance(const PartialTournament &inn, const PartialTournament &out, int k,
                           Encoding e = Encoding::Reduced) -> CnfFormula {
  if (k < 3)
    throw Error(ErrorKind::KTooSmall, "k must be at least 3");
  const auto fixed = pivot_fixed_arcs(inn, out);
  return encode(e, fixed.order(), k, fixed, FixedArcs::Simplify);
}

} // namespace ramsey
