#pragma once

#include "ramsey/tournament.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ramsey {

enum class EdgeState : std::uint8_t {
  Unset,
  Forward,  // i -> j for the pair i < j
  Backward, // j -> i
};

/// Tournament with some arcs left open. Stored as the set of known
/// out-neighbours per vertex; a pair is Unset when neither direction is known.
class PartialTournament {
public:
  PartialTournament() = default;

  /// n vertices with every pair Unset ("n generic vertices").
  explicit PartialTournament(int n) : n_(n) {
    if (n < 1 || n > max_order)
      throw Error(ErrorKind::BadOrder, "order must lie in 1..64");
  }

  explicit PartialTournament(const Tournament &t) : n_(t.order()) {
    for (int i = 0; i < n_; ++i)
      out_[i] = t.out(i).bits();
  }

  auto order() const -> int { return n_; }

  auto state(int i, int j) const -> EdgeState {
    if (i > j)
      std::swap(i, j);
    if (knows(i, j))
      return EdgeState::Forward;
    if (knows(j, i))
      return EdgeState::Backward;
    return EdgeState::Unset;
  }

  /// Known arc from -> to.
  auto knows(int from, int to) const -> bool { return (out_[from] >> to) & 1U; }
  auto is_set(int i, int j) const -> bool { return knows(i, j) || knows(j, i); }
  auto known_out(int v) const -> VertexSet { return VertexSet(out_[v]); }
  auto known_in(int v) const -> VertexSet {
    VertexSet s;
    for (int w = 0; w < n_; ++w)
      if (knows(w, v))
        s.insert(w);
    return s;
  }

  /// Fixes from -> to. Overwrites a previous orientation of the pair.
  auto orient(int from, int to) -> void {
    check_pair(from, to);
    out_[to] &= ~(std::uint64_t{1} << from);
    out_[from] |= std::uint64_t{1} << to;
  }

  auto set_state(int i, int j, EdgeState s) -> void {
    if (i > j) {
      std::swap(i, j);
      if (s != EdgeState::Unset)
        s = s == EdgeState::Forward ? EdgeState::Backward : EdgeState::Forward;
    }
    check_pair(i, j);
    switch (s) {
    case EdgeState::Forward: orient(i, j); break;
    case EdgeState::Backward: orient(j, i); break;
    case EdgeState::Unset:
      out_[i] &= ~(std::uint64_t{1} << j);
      out_[j] &= ~(std::uint64_t{1} << i);
      break;
    }
  }

  auto unset_count() const -> int {
    int set = 0;
    for (int i = 0; i < n_; ++i)
      set += std::popcount(out_[i]);
    return static_cast<int>(choose2(n_)) - set;
  }
  auto is_complete() const -> bool { return unset_count() == 0; }

  /// Every pair set in `*this` is set the same way in `other`.
  auto is_extended_by(const PartialTournament &other) const -> bool {
    if (other.n_ != n_)
      return false;
    for (int i = 0; i < n_; ++i)
      if ((out_[i] & ~other.out_[i]) != 0)
        return false;
    return true;
  }

  /// Union of the set arcs of both, or nullopt if they orient a pair
  /// differently.
  static auto merge(const PartialTournament &a, const PartialTournament &b) -> std::optional<PartialTournament> {
    if (a.n_ != b.n_)
      throw Error(ErrorKind::InvalidArgument, "merging partial tournaments of different order");
    PartialTournament m = a;
    for (int i = 0; i < m.n_; ++i)
      m.out_[i] |= b.out_[i];
    for (int i = 0; i < m.n_; ++i)
      for (int j : VertexSet(m.out_[i]))
        if ((m.out_[j] >> i) & 1U)
          return std::nullopt;
    return m;
  }

  auto to_tournament() const -> Tournament {
    if (!is_complete())
      throw Error(ErrorKind::InvariantViolation, "partial tournament still has unset pairs");
    return Tournament::from_rows(n_, std::span<const std::uint64_t>(out_.data(), n_));
  }

  auto raw_rows() const -> std::span<const std::uint64_t> { return {out_.data(), static_cast<std::size_t>(n_)}; }

  friend auto operator==(const PartialTournament &a, const PartialTournament &b) -> bool {
    return a.n_ == b.n_ && std::equal(a.out_.begin(), a.out_.begin() + a.n_, b.out_.begin());
  }

private:
  auto check_pair(int i, int j) const -> void {
    if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j)
      throw Error(ErrorKind::InvalidArgument,
                  "bad pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }

  int n_ = 0;
  std::array<std::uint64_t, max_order> out_{};
};

} // namespace ramsey
