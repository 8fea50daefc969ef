#pragma once

// Proper edge-colourings of K_n, the colouring induced by an additive set,
// subset finders for rich / matching-complete vertex subsets, and the exact
// pair-cover probability p(a, n).

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "ksumlab/combinatorics.hpp"
#include "ksumlab/group.hpp"
#include "ksumlab/sumset.hpp"

namespace ksumlab {

/// Edge colouring of K_n; colour ids are opaque non-negative integers.
class Coloring {
public:
  static constexpr std::int64_t kUnset = -1;

  explicit Coloring(std::uint32_t n) : n_(n), colour_(std::size_t{n} * n, kUnset) {
    if (n < 2) throw Error("colouring needs n >= 2");
  }

  std::uint32_t n() const noexcept { return n_; }

  void set(std::uint32_t u, std::uint32_t v, std::int64_t c) {
    if (u >= n_ || v >= n_) throw Error("vertex out of range");
    if (u == v) throw Error("self-loop " + std::to_string(u));
    if (c < 0) throw Error("colour ids must be non-negative");
    colour_[idx(u, v)] = c;
    colour_[idx(v, u)] = c;
    dense_valid_ = false;
  }

  std::int64_t at(std::uint32_t u, std::uint32_t v) const { return colour_[idx(u, v)]; }

  bool complete() const noexcept {
    for (std::uint32_t u = 0; u < n_; ++u)
      for (std::uint32_t v = u + 1; v < n_; ++v)
        if (colour_[idx(u, v)] == kUnset) return false;
    return true;
  }

  /// Sorted distinct colour ids.
  std::vector<std::int64_t> palette() const {
    std::vector<std::int64_t> p;
    for (std::uint32_t u = 0; u < n_; ++u)
      for (std::uint32_t v = u + 1; v < n_; ++v) p.push_back(colour_[idx(u, v)]);
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    return p;
  }

  /// Number of edges per colour.
  std::map<std::int64_t, std::uint32_t> colour_counts() const {
    std::map<std::int64_t, std::uint32_t> m;
    for (std::uint32_t u = 0; u < n_; ++u)
      for (std::uint32_t v = u + 1; v < n_; ++v) ++m[colour_[idx(u, v)]];
    return m;
  }

  /// Colours renumbered 0..|palette|-1 in palette order, row-major n x n.
  const std::vector<std::uint32_t>& dense() const {
    if (!dense_valid_) {
      const auto p = palette();
      std::unordered_map<std::int64_t, std::uint32_t> id;
      for (std::uint32_t i = 0; i < p.size(); ++i) id[p[i]] = i;
      dense_.assign(colour_.size(), 0);
      for (std::size_t i = 0; i < colour_.size(); ++i)
        if (colour_[i] != kUnset) dense_[i] = id[colour_[i]];
      dense_palette_ = static_cast<std::uint32_t>(p.size());
      dense_valid_ = true;
    }
    return dense_;
  }
  std::uint32_t palette_size() const {
    dense();
    return dense_palette_;
  }

private:
  std::size_t idx(std::uint32_t u, std::uint32_t v) const noexcept { return std::size_t{u} * n_ + v; }

  std::uint32_t n_;
  std::vector<std::int64_t> colour_;
  mutable std::vector<std::uint32_t> dense_;
  mutable std::uint32_t dense_palette_ = 0;
  mutable bool dense_valid_ = false;
};

/// True iff every edge is coloured and adjacent edges differ.
inline bool validate_proper(const Coloring& c) {
  if (!c.complete()) throw Error("colouring is missing edge colours");
  const auto n = c.n();
  std::vector<std::int64_t> seen;
  for (std::uint32_t u = 0; u < n; ++u) {
    seen.clear();
    for (std::uint32_t v = 0; v < n; ++v)
      if (v != u) seen.push_back(c.at(u, v));
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  }
  return true;
}

/// Vertices are the sorted elements of A; edge {x,y} gets colour index(x+y).
inline Coloring induced_coloring(const GroupSet& a) {
  if (a.size() < 2) throw Error("induced_coloring needs |A| >= 2");
  const auto elems = a.elements();
  const auto& g = a.group();
  Coloring c(static_cast<std::uint32_t>(elems.size()));
  for (std::uint32_t u = 0; u < elems.size(); ++u)
    for (std::uint32_t v = u + 1; v < elems.size(); ++v)
      c.set(u, v, g.add(elems[u], elems[v]).index);
  return c;
}

/// Canonical round-robin 1-factorization of K_n (n even): colour r pairs
/// r with n-1 and r+i with r-i (mod n-1).
inline Coloring round_robin_coloring(std::uint32_t n) {
  if (n < 2 || n % 2) throw Error("round-robin factorization needs even n >= 2");
  Coloring c(n);
  const std::uint32_t m = n - 1;
  for (std::uint32_t r = 0; r < m; ++r) {
    c.set(r, m, r);
    for (std::uint32_t i = 1; i < n / 2; ++i) c.set((r + i) % m, (r + m - i) % m, r);
  }
  return c;
}

namespace detail {

/// Counts distinct dense colours on K[U]; `stamp` is scratch sized to the
/// palette and `epoch` must be fresh per call.
inline std::uint32_t count_colours(const Coloring& c, std::span<const std::uint32_t> u,
                                   std::vector<std::uint32_t>& stamp, std::uint32_t epoch) {
  const auto& d = c.dense();
  const auto n = c.n();
  std::uint32_t count = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      const auto col = d[std::size_t{u[i]} * n + u[j]];
      if (stamp[col] != epoch) {
        stamp[col] = epoch;
        ++count;
      }
    }
  return count;
}

}  // namespace detail

/// Distinct colours on the edges inside U.
inline std::uint32_t colours_on(const Coloring& c, const std::vector<std::uint32_t>& u) {
  for (auto v : u)
    if (v >= c.n()) throw Error("vertex out of range");
  std::vector<std::uint32_t> sorted = u;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::uint32_t> stamp(c.palette_size() + 1, 0);
  return detail::count_colours(c, sorted, stamp, 1);
}

struct SubsetSearchOptions {
  std::uint32_t exhaustive_max_n = 20;
  std::uint64_t seed = 0;
  std::uint64_t retry_cap = 1'000'000;
};

struct RichSubsetResult {
  std::vector<std::uint32_t> vertices;
  std::uint32_t colours = 0;
  bool exhaustive = true;  // false when found by seeded sampling
  std::uint64_t tried = 0;
};

/// Vertex set of size floor((n+3)/2) seeing at least n colours. Lexicographically
/// least such set when n <= exhaustive_max_n, seeded sampling above.
inline RichSubsetResult find_rich_subset(const Coloring& c, const SubsetSearchOptions& opt = {}) {
  const auto n = c.n();
  if (n < 5) throw Error("find_rich_subset requires n >= 5");
  const auto pal = c.palette_size();
  if (pal < n)
    throw Error("find_rich_subset requires at least n colours (n=" + std::to_string(n) +
                ", palette=" + std::to_string(pal) + ")");
  const std::uint32_t s = (n + 3) / 2;
  std::vector<std::uint32_t> stamp(pal + 1, 0);
  std::uint32_t epoch = 0;
  RichSubsetResult res;
  if (n <= opt.exhaustive_max_n) {
    auto u = first_combination(s);
    do {
      ++res.tried;
      const auto got = detail::count_colours(c, u, stamp, ++epoch);
      if (got >= n) {
        res.vertices = u;
        res.colours = got;
        return res;
      }
    } while (next_combination(u, n));
    throw Error("find_rich_subset: exhaustive scan found no qualifying subset (improper colouring?)");
  }
  res.exhaustive = false;
  std::mt19937_64 rng(opt.seed);
  std::vector<std::uint32_t> perm(n);
  for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
  for (std::uint64_t t = 0; t < opt.retry_cap; ++t) {
    ++res.tried;
    // Partial Fisher-Yates for the first s slots.
    for (std::uint32_t i = 0; i < s; ++i) {
      std::uniform_int_distribution<std::uint32_t> pick(i, n - 1);
      std::swap(perm[i], perm[pick(rng)]);
    }
    std::vector<std::uint32_t> u(perm.begin(), perm.begin() + s);
    std::sort(u.begin(), u.end());
    const auto got = detail::count_colours(c, u, stamp, ++epoch);
    if (got >= n) {
      res.vertices = std::move(u);
      res.colours = got;
      return res;
    }
  }
  throw Error("find_rich_subset: retry cap exhausted (seed " + std::to_string(opt.seed) + ")");
}

/// True iff every colour class is a perfect matching of K_n.
inline bool all_classes_perfect_matchings(const Coloring& c) {
  const auto n = c.n();
  if (n % 2) return false;
  for (auto [col, cnt] : c.colour_counts())
    if (cnt != n / 2) return false;
  return validate_proper(c);
}

/// For n even with n-1 colours: {0, ..., n/2} sees all n-1 colours.
inline std::vector<std::uint32_t> find_matching_subset(const Coloring& c) {
  const auto n = c.n();
  if (n < 5 || n % 2) throw Error("find_matching_subset requires even n >= 5");
  if (c.palette_size() != n - 1)
    throw Error("find_matching_subset requires exactly n-1 colours");
  if (!all_classes_perfect_matchings(c))
    throw Error("find_matching_subset: some colour class is not a perfect matching");
  std::vector<std::uint32_t> u(n / 2 + 1);
  for (std::uint32_t i = 0; i < u.size(); ++i) u[i] = i;
  if (colours_on(c, u) != n - 1) throw Error("find_matching_subset: internal check failed");
  return u;
}

/// p(a, n) as an exact rational.
struct PairCoverProbability {
  std::uint64_t a = 0;
  std::uint64_t n = 0;
  Rational value;
};

/// Probability that a uniform subset of size floor((n+3)/2) of an n-set
/// contains both ends of at least one of a fixed disjoint pairs.
/// Complement: pick t pairs to meet once (2 ways each), the rest of U from
/// the n-2a unpaired points.
inline PairCoverProbability exact_pair_cover_probability(std::uint64_t a, std::uint64_t n) {
  if (n < 5) throw Error("exact_pair_cover_probability requires n >= 5");
  if (a < 1 || 2 * a > n) throw Error("exact_pair_cover_probability requires 1 <= a <= n/2");
  const std::uint64_t s = (n + 3) / 2;
  BigInt avoid = 0;
  for (std::uint64_t t = 0; t <= a && t <= s; ++t) {
    if (s - t > n - 2 * a) continue;
    avoid += big_binomial(a, t) * (BigInt(1) << t) * big_binomial(n - 2 * a, s - t);
  }
  const BigInt total = big_binomial(n, s);
  return {a, n, Rational(1) - Rational(avoid, total)};
}

struct TwoSumSubset {
  GroupSet subset;
  bool rich_case = true;  // false: the 2-coset / perfect matching case
  bool exhaustive = true;
};

/// B ⊆ A with |B| = floor((|A|+3)/2) and |2∧B| >= |A|, or, when |2∧A| < |A|,
/// |B| = |A|/2+1 and |2∧B| = |A|-1.
inline TwoSumSubset find_2sum_rich_subset(const GroupSet& a, const SubsetSearchOptions& opt = {}) {
  if (a.size() < 5) throw Error("find_2sum_rich_subset requires |A| >= 5");
  const auto elems = a.elements();
  const auto col = induced_coloring(a);
  TwoSumSubset out{GroupSet(a.group())};
  std::vector<std::uint32_t> u;
  if (col.palette_size() >= col.n()) {
    auto r = find_rich_subset(col, opt);
    u = std::move(r.vertices);
    out.exhaustive = r.exhaustive;
  } else {
    u = find_matching_subset(col);
    out.rich_case = false;
  }
  for (auto v : u) out.subset.insert(elems[v]);
  return out;
}

/// Reads "n <n>" then one "u v c" line per unordered pair.
inline Coloring read_coloring(std::istream& in) {
  std::string line;
  std::uint32_t n = 0;
  std::size_t lineno = 0;
  bool have_header = false;
  std::optional<Coloring> col;
  std::size_t edges = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!have_header) {
      std::int64_t nn = 0;
      if (first != "n" || !(ls >> nn) || nn < 2)
        throw Error("colouring file line " + std::to_string(lineno) + ": expected 'n <n>' with n >= 2");
      n = static_cast<std::uint32_t>(nn);
      col.emplace(n);
      have_header = true;
      continue;
    }
    std::int64_t u = 0, v = 0, c = 0;
    std::istringstream es(line);
    std::string extra;
    if (!(es >> u >> v >> c) || (es >> extra))
      throw Error("colouring file line " + std::to_string(lineno) + ": expected 'u v c'");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw Error("colouring file line " + std::to_string(lineno) + ": vertex out of range");
    if (u == v) throw Error("colouring file line " + std::to_string(lineno) + ": self-loop");
    if (c < 0) throw Error("colouring file line " + std::to_string(lineno) + ": negative colour");
    if (col->at(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)) != Coloring::kUnset)
      throw Error("colouring file line " + std::to_string(lineno) + ": duplicate edge");
    col->set(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v), c);
    ++edges;
  }
  if (!have_header) throw Error("colouring file: missing 'n <n>' header");
  if (edges != std::size_t{n} * (n - 1) / 2) throw Error("colouring file: missing edges");
  return std::move(*col);
}

inline void write_coloring(std::ostream& out, const Coloring& c) {
  out << "n " << c.n() << '\n';
  for (std::uint32_t u = 0; u < c.n(); ++u)
    for (std::uint32_t v = u + 1; v < c.n(); ++v) out << u << ' ' << v << ' ' << c.at(u, v) << '\n';
}

}  // namespace ksumlab
