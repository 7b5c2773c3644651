#pragma once

#include "ramsey/tournament.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace ramsey {

/// Byte string identifying an isomorphism class: the order followed by the
/// packed upper triangle of the adjacency matrix under a canonical labelling.
struct CanonicalForm {
  std::vector<std::uint8_t> bytes;

  friend auto operator<=>(const CanonicalForm &, const CanonicalForm &) = default;
  friend auto operator==(const CanonicalForm &, const CanonicalForm &) -> bool = default;
};

struct CanonicalFormHash {
  auto operator()(const CanonicalForm &f) const -> std::size_t {
    std::size_t h = 1469598103934665603ULL;
    for (auto b : f.bytes)
      h = (h ^ b) * 1099511628211ULL;
    return h;
  }
};

/// Labellings up to this order are canonised by exhaustive minimisation.
inline constexpr int exhaustive_canon_limit = 8;

namespace detail {

// Upper triangle in column order: for j = 1..n-1, for i = 0..j-1, bit
// "vertex at position i beats vertex at position j".
inline auto pack_certificate(const Tournament &t, std::span<const int> at_position) -> CanonicalForm {
  const int n = t.order();
  CanonicalForm f;
  f.bytes.reserve(1 + (choose2(n) + 7) / 8);
  f.bytes.push_back(static_cast<std::uint8_t>(n));
  std::uint8_t acc = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = static_cast<std::uint8_t>((acc << 1) | (t.beats(at_position[i], at_position[j]) ? 1 : 0));
      if (++filled == 8) {
        f.bytes.push_back(acc);
        acc = 0;
        filled = 0;
      }
    }
  if (filled)
    f.bytes.push_back(static_cast<std::uint8_t>(acc << (8 - filled)));
  return f;
}

// Branch and bound over all labellings, minimising the column-order bit string.
class ExhaustiveCanon {
public:
  explicit ExhaustiveCanon(const Tournament &t) : t_(t), n_(t.order()) {
    cur_.assign(n_, -1);
    best_.assign(n_, -1);
    cur_bits_.assign(choose2(n_), 0);
    best_bits_.assign(choose2(n_), 1);
  }

  auto run() -> CanonicalForm {
    search(0, VertexSet{}, false);
    return pack_certificate(t_, best_);
  }

private:
  // `ahead` means the current prefix is already strictly smaller than best.
  auto search(int pos, VertexSet used, bool ahead) -> void {
    if (pos == n_) {
      if (ahead || !have_best_) {
        best_ = cur_;
        best_bits_ = cur_bits_;
        have_best_ = true;
        ++updates_;
      }
      return;
    }
    const std::size_t base = static_cast<std::size_t>(pos) * (pos - 1) / 2;
    for (int v : VertexSet::range(n_) - used) {
      bool now_ahead = ahead || !have_best_;
      bool worse = false;
      for (int i = 0; i < pos; ++i) {
        const std::uint8_t bit = t_.beats(cur_[i], v) ? 1 : 0;
        cur_bits_[base + i] = bit;
        if (!now_ahead) {
          if (bit > best_bits_[base + i]) {
            worse = true;
            break;
          }
          if (bit < best_bits_[base + i])
            now_ahead = true;
        }
      }
      if (worse)
        continue;
      cur_[pos] = v;
      const auto before = updates_;
      search(pos + 1, used | VertexSet::single(v), now_ahead);
      // A new best below here shares this prefix, so later siblings are
      // compared against it from scratch.
      if (updates_ != before)
        ahead = false;
    }
  }

  const Tournament &t_;
  int n_;
  std::vector<int> cur_, best_;
  std::vector<std::uint8_t> cur_bits_, best_bits_;
  bool have_best_ = false;
  std::size_t updates_ = 0;
};

using Partition = std::vector<VertexSet>;

// Splits cells by their out-count vector into every cell until stable.
// Sub-cells are ordered by signature, so the result depends only on the
// isomorphism type of (tournament, ordered partition).
inline auto refine(const Tournament &t, Partition cells) -> Partition {
  for (;;) {
    Partition next;
    next.reserve(t.order());
    for (const auto &cell : cells) {
      if (cell.size() == 1) {
        next.push_back(cell);
        continue;
      }
      std::vector<std::pair<std::vector<int>, int>> sig;
      for (int v : cell) {
        std::vector<int> s(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c)
          s[c] = (t.out(v) & cells[c]).size();
        sig.emplace_back(std::move(s), v);
      }
      std::ranges::sort(sig);
      VertexSet part;
      for (std::size_t i = 0; i < sig.size(); ++i) {
        if (i > 0 && sig[i].first != sig[i - 1].first) {
          next.push_back(part);
          part = VertexSet{};
        }
        part.insert(sig[i].second);
      }
      next.push_back(part);
    }
    if (next.size() == cells.size())
      return next;
    cells = std::move(next);
  }
}

// Quotient matrix of an equitable ordered partition (sizes and out-counts
// between cells). Equals the adjacency matrix when the partition is discrete.
inline auto node_invariant(const Tournament &t, const Partition &cells) -> std::vector<std::uint16_t> {
  std::vector<std::uint16_t> inv;
  inv.reserve(cells.size() * (cells.size() + 1) + 1);
  inv.push_back(static_cast<std::uint16_t>(cells.size()));
  for (const auto &a : cells) {
    inv.push_back(static_cast<std::uint16_t>(a.size()));
    const int rep = a.first();
    for (const auto &b : cells)
      inv.push_back(static_cast<std::uint16_t>((t.out(rep) & b).size()));
  }
  return inv;
}

// Individualisation-refinement search for the leaf with the smallest
// sequence of node invariants; automorphisms found along the way prune
// equivalent branches.
class RefinementCanon {
public:
  explicit RefinementCanon(const Tournament &t) : t_(t), n_(t.order()) {}

  auto run() -> CanonicalForm {
    Partition root = refine(t_, {VertexSet::range(n_)});
    std::vector<std::vector<std::uint16_t>> key;
    std::vector<int> path;
    search(root, key, path);
    return pack_certificate(t_, best_leaf_);
  }

  auto automorphism_count_found() const -> std::size_t { return automorphisms_.size(); }

private:
  auto search(const Partition &cells, std::vector<std::vector<std::uint16_t>> &key,
              std::vector<int> &path) -> void {
    key.push_back(node_invariant(t_, cells));
    const auto verdict = compare_to_best(key);
    if (verdict == std::strong_ordering::greater) {
      key.pop_back();
      return;
    }
    if (static_cast<int>(cells.size()) == n_) {
      std::vector<int> leaf(n_);
      for (int p = 0; p < n_; ++p)
        leaf[p] = cells[p].first();
      if (!best_key_ || key < *best_key_) {
        best_key_ = key;
        best_leaf_ = leaf;
      } else if (key == *best_key_) {
        record_automorphism(leaf);
      }
      key.pop_back();
      return;
    }

    std::size_t target = 0;
    int target_size = max_order + 1;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const int size = cells[c].size();
      if (size > 1 && size < target_size) {
        target = c;
        target_size = size;
      }
    }

    std::vector<int> tried_roots;
    for (int v : cells[target]) {
      // Vertices in the orbit of an explored child (under automorphisms that
      // fix the current path) lead to equivalent subtrees.
      const auto orbit_of = orbits(path);
      const int root = orbit_of[v];
      if (std::ranges::find(tried_roots, root) != tried_roots.end())
        continue;
      tried_roots.push_back(root);

      Partition child;
      child.reserve(cells.size() + 1);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c == target) {
          child.push_back(VertexSet::single(v));
          child.push_back(cells[c] - VertexSet::single(v));
        } else {
          child.push_back(cells[c]);
        }
      }
      path.push_back(v);
      search(refine(t_, std::move(child)), key, path);
      path.pop_back();
    }
    key.pop_back();
  }

  auto compare_to_best(const std::vector<std::vector<std::uint16_t>> &key) const -> std::strong_ordering {
    if (!best_key_)
      return std::strong_ordering::less;
    const auto &best = *best_key_;
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (i >= best.size())
        return std::strong_ordering::greater;
      if (auto c = key[i] <=> best[i]; c != 0)
        return c;
    }
    return std::strong_ordering::equal;
  }

  auto record_automorphism(const std::vector<int> &leaf) -> void {
    // leaf and best_leaf_ give identical matrices, so position-wise matching
    // of vertices is an automorphism.
    std::vector<int> gamma(n_);
    for (int p = 0; p < n_; ++p)
      gamma[leaf[p]] = best_leaf_[p];
    bool identity = true;
    for (int v = 0; v < n_; ++v)
      identity = identity && gamma[v] == v;
    if (!identity)
      automorphisms_.push_back(std::move(gamma));
  }

  // Orbit representative of each vertex under the group generated by the
  // stored automorphisms that fix every vertex of `path`.
  auto orbits(const std::vector<int> &path) const -> std::vector<int> {
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x)
        x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto &g : automorphisms_) {
      if (!std::ranges::all_of(path, [&](int p) { return g[p] == p; }))
        continue;
      for (int v = 0; v < n_; ++v) {
        const int a = find(v), b = find(g[v]);
        if (a != b)
          parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (int v = 0; v < n_; ++v)
      parent[v] = find(v);
    return parent;
  }

  const Tournament &t_;
  int n_;
  std::optional<std::vector<std::vector<std::uint16_t>>> best_key_;
  std::vector<int> best_leaf_;
  std::vector<std::vector<int>> automorphisms_;
};

} // namespace detail

/// Canonical form by exhaustive minimisation over all labellings.
inline auto canonical_form_exhaustive(const Tournament &t) -> CanonicalForm {
  return detail::ExhaustiveCanon(t).run();
}

/// Canonical form by individualisation-refinement.
inline auto canonical_form_refined(const Tournament &t) -> CanonicalForm {
  return detail::RefinementCanon(t).run();
}

inline auto canonical_form(const Tournament &t) -> CanonicalForm {
  return t.order() <= exhaustive_canon_limit ? canonical_form_exhaustive(t) : canonical_form_refined(t);
}

/// The canonically labelled representative encoded by `f`.
inline auto from_canonical_form(const CanonicalForm &f) -> Tournament {
  if (f.bytes.empty())
    throw Error(ErrorKind::ParseError, "empty canonical form");
  const int n = f.bytes[0];
  if (f.bytes.size() != static_cast<std::size_t>(1 + (choose2(n) + 7) / 8))
    throw Error(ErrorKind::ParseError, "canonical form has the wrong length");
  std::vector<std::uint64_t> rows(n, 0);
  std::size_t bit = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++bit) {
      const bool forward = (f.bytes[1 + bit / 8] >> (7 - bit % 8)) & 1U;
      if (forward)
        rows[i] |= std::uint64_t{1} << j;
      else
        rows[j] |= std::uint64_t{1} << i;
    }
  return Tournament::from_rows(n, rows);
}

inline auto are_isomorphic(const Tournament &a, const Tournament &b) -> bool {
  if (a.order() != b.order())
    return false;
  return canonical_form(a) == canonical_form(b);
}

} // namespace ramsey
