#pragma once

#include "ramsey/blocks.hpp"
#include "ramsey/canonical.hpp"
#include "ramsey/propagate.hpp"

#include <algorithm>
#include <atomic>
#include <compare>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace ramsey {

// --- small Ramsey numbers ---------------------------------------------------

/// R(k) for the values known exactly; nullopt beyond R(6).
inline auto ramsey_number(int k) -> std::optional<int> {
  static constexpr int table[] = {0, 1, 2, 4, 8, 14, 28};
  if (k >= 1 && k <= 6)
    return table[k];
  return std::nullopt;
}

inline auto require_ramsey(int k) -> int {
  auto r = ramsey_number(k);
  if (!r)
    throw Error(ErrorKind::UnknownSmallerRamsey, "R(" + std::to_string(k) + ") is not in the built-in table");
  return *r;
}

// --- case tuples --------------------------------------------------------------

struct CaseTuple {
  int a = 0, b = 0, c = 0, d = 0;
  int n = 0;
  int k = 0;

  auto block_total() const -> int { return a + b + c + d; }

  friend auto operator<=>(const CaseTuple &, const CaseTuple &) = default;
};

inline auto to_string(const CaseTuple &t) -> std::string {
  return "(" + std::to_string(t.a) + "," + std::to_string(t.b) + "," + std::to_string(t.c) + "," +
         std::to_string(t.d) + ")";
}

namespace detail {

// Neighbourhood bound when a block is the unique largest TT_{k-2}-free
// tournament: for k = 6 that block is ST_7, which neither ST_12 nor ST_13
// contains, so any u/v neighbourhood holding it has at most 11 vertices.
inline auto full_block_neighbourhood_cap(int k) -> std::optional<int> {
  if (k == 6)
    return 11;
  return std::nullopt;
}

} // namespace detail

/// Block-size tuples (|A|,|B|,|C|,|D|) that a TT_k-free n-vertex tournament
/// can show at an edge of minimum cycle count, normalised to |A| >= |C|.
inline auto admissible_cases(int n, int k) -> std::vector<CaseTuple> {
  if (k < 3)
    throw Error(ErrorKind::KTooSmall, "k must be at least 3");
  if (n < 2)
    throw Error(ErrorKind::BadOrder, "order must be at least 2");
  const int block_cap = require_ramsey(k - 2) - 1;
  const int nbhd_cap = require_ramsey(k - 1) - 1;
  const auto bounds = cycle_bounds(n);
  const int d_cap = std::min<int>(nbhd_cap, static_cast<int>(bounds.d_cap));
  const auto full_cap = detail::full_block_neighbourhood_cap(k);

  // When the average cycles per edge is an integer and the chosen edge meets
  // it, every edge does, which forces a regular tournament with constant
  // block sizes.
  std::optional<int> tight_d;
  if (n % 2 == 1 && bounds.avg_cycles_per_edge.denominator() == 1)
    tight_d = static_cast<int>(bounds.avg_cycles_per_edge.numerator());

  std::vector<CaseTuple> out;
  for (int a = 0; a <= block_cap; ++a)
    for (int b = 0; b <= block_cap; ++b)
      for (int c = 0; c <= std::min(a, block_cap); ++c) {
        const int d = n - 2 - a - b - c;
        if (d < 0 || d > d_cap)
          continue;
        // out(u) = A+B+v, in(v) = B+C+u, out(v) = A+D, in(u) = C+D
        int cap_ab = nbhd_cap, cap_bc = nbhd_cap, cap_ad = nbhd_cap, cap_cd = nbhd_cap;
        if (full_cap) {
          if (a == block_cap)
            cap_ab = cap_ad = std::min(cap_ab, *full_cap);
          if (b == block_cap)
            cap_ab = cap_bc = std::min(cap_bc, *full_cap);
          if (c == block_cap)
            cap_bc = cap_cd = std::min(cap_cd, *full_cap);
        }
        if (a + b + 1 > cap_ab || b + c + 1 > cap_bc || a + d > cap_ad || c + d > cap_cd)
          continue;
        if (tight_d && d == *tight_d) {
          const int side = (n - 1) / 2 - d;
          if (a != side || c != side || b != (n - 3) / 2 - side)
            continue;
        }
        out.push_back({a, b, c, d, n, k});
      }
  return out;
}

// --- catalogs -----------------------------------------------------------------

struct CatalogEntry {
  CanonicalForm form;
  Tournament tournament;
};

struct Catalog {
  int k = 0;
  int n = 0;
  std::vector<CatalogEntry> entries; // sorted by form
  bool complete = false;

  auto size() const -> std::size_t { return entries.size(); }
  auto empty() const -> bool { return entries.empty(); }
  auto tournaments() const -> std::vector<Tournament> {
    std::vector<Tournament> out;
    for (const auto &e : entries)
      out.push_back(e.tournament);
    return out;
  }
};

/// Catalog whose entries are the canonical representatives of `forms`.
inline auto make_catalog(int n, int k, const std::set<CanonicalForm> &forms, bool complete) -> Catalog {
  Catalog cat{.k = k, .n = n, .complete = complete};
  for (const auto &f : forms)
    cat.entries.push_back({f, from_canonical_form(f)});
  return cat;
}

/// Complete catalog of TT_k-free tournaments on 2 vertices.
inline auto base_catalog(int k) -> Catalog {
  std::set<CanonicalForm> forms;
  if (k > 2)
    forms.insert(canonical_form(Tournament::transitive(2)));
  return make_catalog(2, k, forms, true);
}

namespace detail {

// Runs fn(i) for i in [0, count) on up to `workers` threads.
template <typename Fn>
auto parallel_for(std::size_t count, int workers, Fn &&fn) -> void {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    const auto threads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    for (std::size_t w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        try {
          for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
            fn(i);
        } catch (...) {
          std::scoped_lock lock(failure_mutex);
          if (!failure)
            failure = std::current_exception();
          next = count;
        }
      });
  }
  if (failure)
    std::rethrow_exception(failure);
}

// Forms reached by adding one vertex to each entry, kept when `keep` holds.
template <typename Keep>
auto extend_forms(const Catalog &cat, Keep &&keep, int workers) -> std::set<CanonicalForm> {
  const int n = cat.n;
  if (n + 1 > max_order)
    throw Error(ErrorKind::SizeOverflow, "extension beyond 64 vertices");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    pairs.emplace_back(i, n);
  std::set<CanonicalForm> forms;
  std::mutex forms_mutex;
  parallel_for(cat.entries.size(), workers, [&](std::size_t e) {
    PartialTournament base(n + 1);
    const auto &t = cat.entries[e].tournament;
    for (int i = 0; i < n; ++i)
      for (int j : t.out(i))
        base.orient(i, j);
    std::set<CanonicalForm> local;
    for_each_completion(base, cat.k, pairs, [&](const PartialTournament &q) {
      auto full = q.to_tournament();
      if (keep(full))
        local.insert(canonical_form(full));
    });
    std::scoped_lock lock(forms_mutex);
    forms.merge(local);
  });
  return forms;
}

} // namespace detail

/// All TT_k-free one-vertex extensions of the entries, up to isomorphism.
/// Complete when the input is.
inline auto extend_catalog(const Catalog &cat, int workers = 1) -> Catalog {
  auto forms = detail::extend_forms(cat, [](const Tournament &) { return true; }, workers);
  return make_catalog(cat.n + 1, cat.k, forms, cat.complete);
}

/// Complete catalogs of TT_j-free tournaments on 2..m vertices, keyed by (j, m).
class PartCatalogs {
public:
  auto add(Catalog cat) -> void {
    const auto key = std::pair{cat.k, cat.n};
    catalogs_.insert_or_assign(key, std::move(cat));
  }

  auto find(int k, int n) const -> const Catalog * {
    auto it = catalogs_.find({k, n});
    return it == catalogs_.end() ? nullptr : &it->second;
  }

  /// Entries of the block of order `size`: one trivial entry for orders 0 and
  /// 1, which need no arcs.
  auto block_options(int k, int size) const -> std::vector<std::optional<Tournament>> {
    if (size == 0 || (size == 1 && k > 1))
      return {std::nullopt};
    if (size == 1)
      return {};
    const auto *cat = find(k, size);
    if (cat == nullptr || !cat->complete)
      throw Error(ErrorKind::IncompletePartCatalog,
                  "no complete catalog of TT_" + std::to_string(k) + "-free tournaments on " + std::to_string(size) +
                      " vertices");
    std::vector<std::optional<Tournament>> out;
    for (const auto &e : cat->entries)
      out.emplace_back(e.tournament);
    return out;
  }

  /// Builds TT_j-free catalogs for orders 2..max_n by repeated extension.
  auto build_chain(int j, int max_n, int workers = 1) -> void {
    if (max_n < 2)
      return;
    auto cat = base_catalog(j);
    for (;;) {
      const int n = cat.n;
      add(cat);
      if (n >= max_n)
        break;
      cat = extend_catalog(cat, workers);
    }
  }

  auto size() const -> std::size_t { return catalogs_.size(); }

private:
  std::map<std::pair<int, int>, Catalog> catalogs_;
};

/// The part catalogs a k-level search needs: TT_{k-2}-free orders below
/// R(k-2) and TT_{k-1}-free orders below R(k-1), each up to the first empty
/// order.
inline auto build_part_catalogs(int k, int workers = 1) -> PartCatalogs {
  PartCatalogs parts;
  for (int j : {k - 2, k - 1})
    if (j >= 1)
      parts.build_chain(j, require_ramsey(j), workers);
  return parts;
}

// --- block assembly -----------------------------------------------------------

/// Vertex layout of an assembled case: u = 0, v = 1, then A, B, C, D.
struct CaseLayout {
  CaseTuple sizes;

  auto a_begin() const -> int { return 2; }
  auto b_begin() const -> int { return 2 + sizes.a; }
  auto c_begin() const -> int { return b_begin() + sizes.b; }
  auto d_begin() const -> int { return c_begin() + sizes.c; }
  auto order() const -> int { return d_begin() + sizes.d; }

  auto a() const -> VertexSet { return run(a_begin(), sizes.a); }
  auto b() const -> VertexSet { return run(b_begin(), sizes.b); }
  auto c() const -> VertexSet { return run(c_begin(), sizes.c); }
  auto d() const -> VertexSet { return run(d_begin(), sizes.d); }

private:
  static auto run(int from, int count) -> VertexSet {
    return VertexSet(VertexSet::range(from + count).bits() & ~VertexSet::range(from).bits());
  }
};

namespace detail {

inline auto cross_pairs(VertexSet x, VertexSet y) -> std::vector<std::pair<int, int>> {
  std::vector<std::pair<int, int>> out;
  for (int i : x)
    for (int j : y)
      out.emplace_back(std::min(i, j), std::max(i, j));
  std::ranges::sort(out);
  return out;
}

inline auto place_block(PartialTournament &p, const std::optional<Tournament> &content, int offset) -> void {
  if (!content)
    return;
  for (int i = 0; i < content->order(); ++i)
    for (int j : content->out(i))
      p.orient(offset + i, offset + j);
}

// u, v and their arcs to every block, plus the chosen block contents.
inline auto case_skeleton(const CaseLayout &lay, const std::optional<Tournament> &a, const std::optional<Tournament> &b,
                          const std::optional<Tournament> &c, const std::optional<Tournament> &d)
    -> PartialTournament {
  PartialTournament p(lay.order());
  p.orient(0, 1);
  for (int w : lay.a()) {
    p.orient(0, w);
    p.orient(1, w);
  }
  for (int w : lay.b()) {
    p.orient(0, w);
    p.orient(w, 1);
  }
  for (int w : lay.c()) {
    p.orient(w, 0);
    p.orient(w, 1);
  }
  for (int w : lay.d()) {
    p.orient(1, w);
    p.orient(w, 0);
  }
  place_block(p, a, lay.a_begin());
  place_block(p, b, lay.b_begin());
  place_block(p, c, lay.c_begin());
  place_block(p, d, lay.d_begin());
  return p;
}

inline auto completions(const PartialTournament &p, int k, const std::vector<std::pair<int, int>> &pairs)
    -> std::vector<PartialTournament> {
  std::vector<PartialTournament> out;
  for_each_completion(p, k, pairs, [&](const PartialTournament &q) { out.push_back(q); });
  return out;
}

} // namespace detail

/// Partial tournaments with u, v, A, B, C fully connected (D left open,
/// its arcs to u and v fixed) for every choice of A, B, C contents: AB and
/// BC gluings are enumerated separately and joined, then A-C is filled.
/// Needs only the TT_{k-2}-free part catalogs.
inline auto assemble_abc(const CaseTuple &cs, const PartCatalogs &parts) -> std::vector<PartialTournament> {
  const CaseLayout lay{cs};
  if (lay.order() > max_order)
    throw Error(ErrorKind::SizeOverflow, "case exceeds 64 vertices");
  const auto ab_pairs = detail::cross_pairs(lay.a(), lay.b());
  const auto bc_pairs = detail::cross_pairs(lay.b(), lay.c());
  const auto ac_pairs = detail::cross_pairs(lay.a(), lay.c());
  std::vector<PartialTournament> out;
  for (const auto &a : parts.block_options(cs.k - 2, cs.a))
    for (const auto &b : parts.block_options(cs.k - 2, cs.b))
      for (const auto &c : parts.block_options(cs.k - 2, cs.c)) {
        const auto skeleton = detail::case_skeleton(lay, a, b, c, std::nullopt);
        const auto ab = detail::completions(skeleton, cs.k, ab_pairs);
        if (ab.empty())
          continue;
        const auto bc = detail::completions(skeleton, cs.k, bc_pairs);
        for (const auto &x : ab)
          for (const auto &y : bc) {
            auto joined = PartialTournament::merge(x, y);
            if (!joined)
              continue;
            for_each_completion(*joined, cs.k, ac_pairs, [&](const PartialTournament &q) { out.push_back(q); });
          }
      }
  return out;
}

namespace detail {

// Attaches every D content to `abc` and fills the remaining pairs.
inline auto attach_d(const PartialTournament &abc, const CaseTuple &cs,
                     const std::vector<std::optional<Tournament>> &d_options, std::set<CanonicalForm> &forms) -> void {
  const CaseLayout lay{cs};
  for (const auto &d : d_options) {
    auto p = abc;
    place_block(p, d, lay.d_begin());
    for_each_completion(p, cs.k, unset_pairs(p),
                        [&](const PartialTournament &q) { forms.insert(canonical_form(q.to_tournament())); });
  }
}

} // namespace detail

/// Every TT_k-free tournament showing the block sizes of `cs` at the edge
/// 0 -> 1, up to isomorphism (canonical representatives).
inline auto assemble_case(const CaseTuple &cs, const PartCatalogs &parts, int workers = 1) -> std::vector<Tournament> {
  const auto abc = assemble_abc(cs, parts);
  std::vector<Tournament> out;
  if (abc.empty())
    return out;
  const auto d_options = parts.block_options(cs.k - 1, cs.d);
  std::set<CanonicalForm> forms;
  std::mutex forms_mutex;
  detail::parallel_for(abc.size(), workers, [&](std::size_t i) {
    std::set<CanonicalForm> local;
    detail::attach_d(abc[i], cs, d_options, local);
    std::scoped_lock lock(forms_mutex);
    forms.merge(local);
  });
  for (const auto &f : forms)
    out.push_back(from_canonical_form(f));
  return out;
}

/// Complete catalog of TT_k-free n-vertex tournaments: the union over the
/// admissible cases, closed under reversal.
inline auto build_catalog(int n, int k, const PartCatalogs &parts, int workers = 1) -> Catalog {
  std::set<CanonicalForm> forms;
  for (const auto &cs : admissible_cases(n, k))
    for (const auto &t : assemble_case(cs, parts, workers)) {
      forms.insert(canonical_form(t));
      forms.insert(canonical_form(reverse(t)));
    }
  return make_catalog(n, k, forms, true);
}

// --- pattern-constrained search ---------------------------------------------

struct PatternSearch {
  std::vector<Catalog> by_order; // orders 2, 3, ... up to the first empty one or max_n
  int largest_order = 0;         // largest order with an entry; 0 if none

  auto largest() const -> const Catalog * {
    for (const auto &c : by_order)
      if (c.n == largest_order)
        return &c;
    return nullptr;
  }
};

/// Vertex-extension search over tournaments free of TT_k and of `pattern`.
inline auto tt_and_pattern_free_search(int k, const Tournament &pattern, int max_n, int workers = 1) -> PatternSearch {
  PatternSearch result;
  auto keep = [&](const Tournament &t) { return !contains_subtournament(t, pattern); };
  auto base = base_catalog(k);
  std::erase_if(base.entries, [&](const CatalogEntry &e) { return !keep(e.tournament); });
  Catalog cat = std::move(base);
  for (;;) {
    if (!cat.empty())
      result.largest_order = cat.n;
    result.by_order.push_back(cat);
    if (cat.empty() || cat.n >= max_n)
      break;
    cat = make_catalog(cat.n + 1, k, detail::extend_forms(cat, keep, workers), true);
  }
  return result;
}

// --- catalog file format -------------------------------------------------------

/// Upper-triangle bits (i < j, row-major, 1 = i -> j) as lowercase hex,
/// most significant bit first, zero-padded on the left to whole digits.
inline auto to_hex(const Tournament &t) -> std::string {
  const int n = t.order();
  const auto bits = static_cast<std::size_t>(choose2(n));
  const std::size_t digits = (bits + 3) / 4;
  std::string stream(digits * 4 - bits, '0');
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      stream.push_back(t.beats(i, j) ? '1' : '0');
  std::string out;
  for (std::size_t d = 0; d < digits; ++d) {
    int value = 0;
    for (std::size_t b = 0; b < 4; ++b)
      value = value * 2 + (stream[d * 4 + b] - '0');
    out.push_back("0123456789abcdef"[value]);
  }
  return out;
}

inline auto from_hex(int n, std::string_view hex) -> Tournament {
  if (n < 2 || n > max_order)
    throw Error(ErrorKind::BadOrder, "order must lie in 2..64");
  const auto bits = static_cast<std::size_t>(choose2(n));
  const std::size_t digits = (bits + 3) / 4;
  if (hex.size() != digits)
    throw Error(ErrorKind::ParseError, "expected " + std::to_string(digits) + " hex digits, got " +
                                           std::to_string(hex.size()));
  std::string stream;
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const char ch = hex[d];
    int value = 0;
    if (ch >= '0' && ch <= '9')
      value = ch - '0';
    else if (ch >= 'a' && ch <= 'f')
      value = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F')
      value = ch - 'A' + 10;
    else
      throw Error(ErrorKind::ParseError, "bad hex digit at offset " + std::to_string(d));
    for (int b = 3; b >= 0; --b)
      stream.push_back(((value >> b) & 1) ? '1' : '0');
  }
  const std::size_t pad = digits * 4 - bits;
  if (stream.find('1') < pad)
    throw Error(ErrorKind::ParseError, "padding bits are not zero");
  std::vector<std::uint64_t> rows(n, 0);
  std::size_t pos = pad;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++pos) {
      if (stream[pos] == '1')
        rows[i] |= std::uint64_t{1} << j;
      else
        rows[j] |= std::uint64_t{1} << i;
    }
  return Tournament::from_rows(n, rows);
}

inline auto format_catalog(const Catalog &cat) -> std::string {
  std::string out = "tournament-catalog v1 n=" + std::to_string(cat.n) + " k=" + std::to_string(cat.k) +
                    " complete=" + (cat.complete ? "1" : "0") + " count=" + std::to_string(cat.entries.size()) + "\n";
  for (const auto &e : cat.entries)
    out += to_hex(e.tournament) + "\n";
  return out;
}

struct CatalogHeader {
  int n = 0;
  int k = 0;
  bool complete = false;
  std::size_t count = 0;
};

inline auto parse_catalog_header(std::string_view line) -> CatalogHeader {
  std::istringstream in{std::string(line)};
  std::string magic, version;
  in >> magic >> version;
  if (magic != "tournament-catalog" || version != "v1")
    throw Error(ErrorKind::ParseError, "line 1: not a tournament-catalog v1 header");
  CatalogHeader h;
  std::set<std::string> seen;
  std::string field;
  while (in >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::ParseError, "line 1: malformed field '" + field + "'");
    const auto key = field.substr(0, eq);
    const auto value = field.substr(eq + 1);
    long long number = 0;
    try {
      std::size_t used = 0;
      number = std::stoll(value, &used);
      if (used != value.size())
        throw std::invalid_argument("trailing");
    } catch (const std::exception &) {
      throw Error(ErrorKind::ParseError, "line 1: field '" + key + "' is not an integer");
    }
    if (key == "n")
      h.n = static_cast<int>(number);
    else if (key == "k")
      h.k = static_cast<int>(number);
    else if (key == "complete")
      h.complete = number != 0;
    else if (key == "count")
      h.count = static_cast<std::size_t>(number);
    else
      throw Error(ErrorKind::ParseError, "line 1: unknown field '" + key + "'");
    seen.insert(key);
  }
  if (seen.size() != 4)
    throw Error(ErrorKind::ParseError, "line 1: header needs n, k, complete and count");
  return h;
}

/// Parses the catalog text format. Entries keep the labelling in the file;
/// they must be TT_k-free and pairwise non-isomorphic.
inline auto parse_catalog(std::string_view text) -> Catalog {
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  std::optional<CatalogHeader> header;
  Catalog cat;
  std::set<CanonicalForm> seen;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty() || line[0] == '#')
      continue;
    if (!header) {
      header = parse_catalog_header(line);
      cat.n = header->n;
      cat.k = header->k;
      cat.complete = header->complete;
      continue;
    }
    Tournament t = [&] {
      try {
        return from_hex(header->n, line);
      } catch (const Error &e) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(number) + ": " + e.what());
      }
    }();
    if (header->k > 0 && has_tt_k(t, header->k))
      throw Error(ErrorKind::InvariantViolation, "line " + std::to_string(number) + ": entry contains TT_" +
                                                     std::to_string(header->k));
    auto form = canonical_form(t);
    if (!seen.insert(form).second)
      throw Error(ErrorKind::InvariantViolation, "line " + std::to_string(number) + ": entry repeats an earlier class");
    cat.entries.push_back({std::move(form), std::move(t)});
  }
  if (!header)
    throw Error(ErrorKind::ParseError, "missing catalog header");
  if (cat.entries.size() != header->count)
    throw Error(ErrorKind::ParseError, "header declares " + std::to_string(header->count) + " entries, found " +
                                           std::to_string(cat.entries.size()) + " (line " + std::to_string(number) +
                                           ")");
  return cat;
}

} // namespace ramsey
