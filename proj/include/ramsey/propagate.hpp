#pragma once

#include "ramsey/partial.hpp"
#include "ramsey/tournament.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace ramsey {

/// Propagation reached a dead end. `pair` is the pair with both orientations
/// forbidden, or (-1, -1) when the set arcs already contain a TT_k.
struct Contradiction {
  std::pair<int, int> pair{-1, -1};

  friend auto operator==(const Contradiction &, const Contradiction &) -> bool = default;
};

using Propagated = std::variant<PartialTournament, Contradiction>;

/// True if the set arcs of `p` contain a transitive k-set.
inline auto has_set_tt_k(const PartialTournament &p, int k) -> bool {
  return detail::chain_exists(p.raw_rows(), VertexSet::range(p.order()), k);
}

/// True if adding from -> to would complete a transitive k-set whose other
/// pairs are all set.
inline auto completes_tt(const PartialTournament &p, int from, int to, int k) -> bool {
  if (k <= 2)
    return true;
  // Every other member sits before `from`, between the two, or after `to`
  // in the transitive order, and must respect that order among themselves.
  const auto before = p.known_in(from) & p.known_in(to);
  const auto between = p.known_out(from) & p.known_in(to);
  const auto after = p.known_out(from) & p.known_out(to);
  const auto cand = before | between | after;
  if (cand.size() < k - 2)
    return false;
  std::array<std::uint64_t, max_order> rows{};
  for (int v : cand) {
    auto allowed = after;
    if (before.contains(v))
      allowed = cand;
    else if (between.contains(v))
      allowed = between | after;
    rows[v] = (p.known_out(v) & allowed).bits();
  }
  return detail::chain_exists(std::span<const std::uint64_t>(rows.data(), p.order()), cand, k - 2);
}

/// Fixpoint of: an Unset pair whose one orientation would complete a set
/// TT_k gets the other orientation.
inline auto propagate(PartialTournament p, int k) -> Propagated {
  if (has_set_tt_k(p, k))
    return Contradiction{};
  const int n = p.order();
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (p.is_set(i, j))
          continue;
        const bool forward_bad = completes_tt(p, i, j, k);
        const bool backward_bad = completes_tt(p, j, i, k);
        if (forward_bad && backward_bad)
          return Contradiction{{i, j}};
        if (forward_bad || backward_bad) {
          forward_bad ? p.orient(j, i) : p.orient(i, j);
          changed = true;
        }
      }
  }
  return p;
}

namespace detail {

template <typename Fn>
auto complete_pairs(const PartialTournament &p, int k, std::span<const std::pair<int, int>> pairs,
                    std::size_t from, Fn &fn) -> void {
  while (from < pairs.size() && p.is_set(pairs[from].first, pairs[from].second))
    ++from;
  if (from == pairs.size()) {
    fn(p);
    return;
  }
  const auto [i, j] = pairs[from];
  for (const auto &[a, b] : {std::pair{i, j}, std::pair{j, i}}) {
    auto next = p;
    next.orient(a, b);
    auto result = propagate(std::move(next), k);
    if (auto *q = std::get_if<PartialTournament>(&result))
      complete_pairs(*q, k, pairs, from + 1, fn);
  }
}

} // namespace detail

/// Calls fn(q) for every TT_k-consistent q that extends `p` by orienting
/// each listed pair, trying pairs in list order and i -> j before j -> i.
/// Each q is propagated, so pairs outside the list may be set as well.
template <typename Fn>
auto for_each_completion(const PartialTournament &p, int k, std::span<const std::pair<int, int>> pairs, Fn &&fn)
    -> void {
  auto start = propagate(p, k);
  if (auto *q = std::get_if<PartialTournament>(&start))
    detail::complete_pairs(*q, k, pairs, 0, fn);
}

/// All unset pairs of `p` in lexicographic order.
inline auto unset_pairs(const PartialTournament &p) -> std::vector<std::pair<int, int>> {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < p.order(); ++i)
    for (int j = i + 1; j < p.order(); ++j)
      if (!p.is_set(i, j))
        out.emplace_back(i, j);
  return out;
}

} // namespace ramsey
