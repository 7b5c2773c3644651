#pragma once

#include <bit>
#include <cstdint>
#include <iterator>

namespace ramsey {

inline constexpr int max_order = 64;

/// Set of vertices 0..63 packed in one machine word.
class VertexSet {
public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}

  /// {0, 1, ..., n-1}
  static constexpr auto range(int n) -> VertexSet {
    return VertexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr auto single(int v) -> VertexSet {
    return VertexSet(std::uint64_t{1} << v);
  }

  constexpr auto bits() const -> std::uint64_t { return bits_; }
  constexpr auto contains(int v) const -> bool { return (bits_ >> v) & 1U; }
  constexpr auto size() const -> int { return std::popcount(bits_); }
  constexpr auto empty() const -> bool { return bits_ == 0; }
  constexpr auto first() const -> int { return std::countr_zero(bits_); }

  constexpr auto insert(int v) -> void { bits_ |= std::uint64_t{1} << v; }
  constexpr auto erase(int v) -> void { bits_ &= ~(std::uint64_t{1} << v); }

  constexpr auto is_subset_of(VertexSet other) const -> bool {
    return (bits_ & ~other.bits_) == 0;
  }

  friend constexpr auto operator&(VertexSet a, VertexSet b) -> VertexSet {
    return VertexSet(a.bits_ & b.bits_);
  }
  friend constexpr auto operator|(VertexSet a, VertexSet b) -> VertexSet {
    return VertexSet(a.bits_ | b.bits_);
  }
  /// Set difference.
  friend constexpr auto operator-(VertexSet a, VertexSet b) -> VertexSet {
    return VertexSet(a.bits_ & ~b.bits_);
  }
  constexpr auto operator&=(VertexSet o) -> VertexSet & { bits_ &= o.bits_; return *this; }
  constexpr auto operator|=(VertexSet o) -> VertexSet & { bits_ |= o.bits_; return *this; }
  constexpr auto operator-=(VertexSet o) -> VertexSet & { bits_ &= ~o.bits_; return *this; }
  friend constexpr auto operator==(VertexSet, VertexSet) -> bool = default;

  class iterator {
  public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = int;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
    constexpr auto operator*() const -> int { return std::countr_zero(rest_); }
    constexpr auto operator++() -> iterator & { rest_ &= rest_ - 1; return *this; }
    constexpr auto operator++(int) -> iterator { auto old = *this; ++*this; return old; }
    friend constexpr auto operator==(iterator, iterator) -> bool = default;

  private:
    std::uint64_t rest_ = 0;
  };

  constexpr auto begin() const -> iterator { return iterator(bits_); }
  constexpr auto end() const -> iterator { return iterator(0); }

private:
  std::uint64_t bits_ = 0;
};

} // namespace ramsey
