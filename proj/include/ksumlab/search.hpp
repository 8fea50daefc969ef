#pragma once

// Extremal search for c_k(n): the largest A ⊆ G with k∧A ≠ G, over every
// abelian group of order n, plus the odd-order 2-sum covering check.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "ksumlab/combinatorics.hpp"
#include "ksumlab/group.hpp"
#include "ksumlab/literal.hpp"
#include "ksumlab/parallel.hpp"
#include "ksumlab/report.hpp"
#include "ksumlab/structure.hpp"
#include "ksumlab/sumset.hpp"
#include "ksumlab/verify.hpp"

namespace ksumlab {

/// One spec per isomorphism class of abelian groups of order n, in primary
/// decomposition form: primes ascending, and for each prime the exponent
/// partitions in reverse-lexicographic order (so Z4 precedes Z2xZ2).
inline std::vector<GroupSpec> enumerate_abelian_groups(std::uint64_t n, std::uint64_t cap = Limits{}.max_parse_order) {
  if (n < 2) throw Error("enumerate_abelian_groups requires n >= 2");
  if (n > cap) throw Error("enumerate_abelian_groups: n exceeds cap " + std::to_string(cap));
  std::vector<std::pair<std::uint32_t, std::uint32_t>> primes;
  auto m = n;
  for (std::uint64_t p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      std::uint32_t e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      primes.emplace_back(static_cast<std::uint32_t>(p), e);
    }
  if (m > 1) primes.emplace_back(static_cast<std::uint32_t>(m), 1);

  const auto partitions = [](std::uint32_t e) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur;
    const auto rec = [&](auto&& self, std::uint32_t left, std::uint32_t max_part) -> void {
      if (left == 0) {
        out.push_back(cur);
        return;
      }
      for (std::uint32_t p = std::min(left, max_part); p >= 1; --p) {
        cur.push_back(p);
        self(self, left - p, p);
        cur.pop_back();
      }
    };
    rec(rec, e, e);
    return out;
  };

  std::vector<std::vector<std::uint32_t>> specs{{}};
  for (auto [p, e] : primes) {
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& prefix : specs)
      for (const auto& part : partitions(e)) {
        auto f = prefix;
        for (auto x : part) {
          std::uint32_t q = 1;
          for (std::uint32_t i = 0; i < x; ++i) q *= p;
          f.push_back(q);
        }
        next.push_back(std::move(f));
      }
    specs = std::move(next);
  }
  std::vector<GroupSpec> out;
  for (auto& f : specs) out.emplace_back(std::move(f), cap);
  return out;
}

struct SearchOptions {
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  Limits limits;
  // Subsets per checkpoint block.
  std::uint64_t block = 1'000'000;
  std::optional<std::filesystem::path> checkpoint;
  // Stop after this many blocks (for interruption tests); 0 = no limit.
  std::uint64_t max_blocks = 0;
};

struct ExtremalResult {
  GroupSpec group;
  std::uint32_t k = 0;
  std::uint32_t max_nonfull_size = 0;
  GroupSet witness;
  std::size_t witness_ksum_size = 0;
  Rational ratio;
  // Sizes above max_nonfull_size, each enumerated completely and found full.
  std::vector<std::uint32_t> certified_full_sizes;
  std::uint64_t subsets_checked = 0;
  bool exact = true;  // false: structured-family lower bound only
  bool complete = true;  // false: interrupted by max_blocks
  std::string note;
};

inline Json to_json(const ExtremalResult& r) {
  Json j;
  j["group"] = r.group.str();
  j["k"] = r.k;
  j["max_nonfull_size"] = r.max_nonfull_size;
  j["witness"] = r.witness.empty() ? std::string("{}") : "{" + to_literal(r.witness) + "}";
  j["witness_ksum_size"] = r.witness_ksum_size;
  j["ratio"] = rational_str(r.ratio);
  j["kind"] = r.exact ? "exact" : "lower_bound";
  j["certified_full_sizes"] = r.certified_full_sizes;
  j["subsets_checked"] = r.subsets_checked;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

namespace detail {

inline GroupSet set_from_combination(const GroupSpec& g, std::span<const std::uint32_t> c) {
  GroupSet a(g);
  for (auto x : c) a.insert(Element{x});
  return a;
}

inline bool ksum_covers(const GroupSpec& g, std::span<const std::uint32_t> c, std::size_t k) {
  std::vector<Element> items;
  items.reserve(c.size());
  for (auto x : c) items.push_back(Element{x});
  return ksum_layers(g, items, k)[k].is_whole();
}

struct Checkpoint {
  std::string group;
  std::uint32_t k = 0;
  std::uint32_t size = 0;
  std::uint64_t next_rank = 0;
  std::uint64_t subsets_checked = 0;
  std::vector<std::uint32_t> certified;

  Json to_json() const {
    return Json{{"group", group},     {"k", k},
                {"size", size},       {"next_rank", next_rank},
                {"subsets_checked", subsets_checked}, {"certified_full_sizes", certified}};
  }
  static Checkpoint from_json(const Json& j) {
    Checkpoint c;
    c.group = j.at("group").get<std::string>();
    c.k = j.at("k").get<std::uint32_t>();
    c.size = j.at("size").get<std::uint32_t>();
    c.next_rank = j.at("next_rank").get<std::uint64_t>();
    c.subsets_checked = j.at("subsets_checked").get<std::uint64_t>();
    c.certified = j.at("certified_full_sizes").get<std::vector<std::uint32_t>>();
    return c;
  }
};

inline void write_checkpoint(const std::filesystem::path& path, const Checkpoint& c) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write checkpoint " + tmp);
    out << c.to_json().dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

inline std::optional<Checkpoint> read_checkpoint(const std::filesystem::path& path, const GroupSpec& g,
                                                 std::uint32_t k) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error("corrupt checkpoint " + path.string() + ": " + e.what());
  }
  auto c = Checkpoint::from_json(j);
  if (c.group != g.str() || c.k != k) return std::nullopt;
  return c;
}

}  // namespace detail

/// Largest |A| with k∧A ≠ G. Sizes are scanned downward from |G|; every size
/// above the answer is enumerated in full, which by monotonicity of k∧A
/// under inclusion certifies all larger sets. The witness is the
/// lexicographically least non-covering set of the maximal size.
inline ExtremalResult max_nonfull_size(const GroupSpec& g, std::uint32_t k, const SearchOptions& opt = {}) {
  const auto order = g.order();
  if (order > opt.limits.max_search_order)
    throw Error("max_nonfull_size: group order " + std::to_string(order) + " exceeds search cap " +
                std::to_string(opt.limits.max_search_order));
  if (k < 2) throw Error("max_nonfull_size requires k >= 2");
  if (k >= order) throw Error("max_nonfull_size: k >= |G| is degenerate");

  detail::Checkpoint cp{g.str(), k, order, 0, 0, {}};
  if (opt.checkpoint)
    if (auto prior = detail::read_checkpoint(*opt.checkpoint, g, k)) cp = *prior;

  ExtremalResult res;
  res.group = g;
  res.k = k;
  std::uint64_t blocks = 0;
  for (std::uint32_t s = cp.size; s >= k; --s) {
    const std::uint64_t total = binomial(order, s);
    std::uint64_t rank = (s == cp.size) ? cp.next_rank : 0;
    std::optional<std::uint64_t> hit;
    while (rank < total && !hit) {
      const auto end = std::min(total, rank + opt.block);
      struct Part {
        std::optional<std::uint64_t> first;
      };
      auto parts = parallel_chunks<Part>(end - rank, opt.jobs, [&](std::uint64_t b, std::uint64_t e) {
        Part p;
        auto c = unrank_combination(rank + b, order, s);
        for (auto r = rank + b; r < rank + e; ++r) {
          if (!detail::ksum_covers(g, c, k)) {
            p.first = r;
            break;
          }
          next_combination(c, order);
        }
        return p;
      });
      for (const auto& p : parts)
        if (p.first) {
          hit = p.first;
          break;
        }
      if (hit) break;
      cp.subsets_checked += end - rank;
      rank = end;
      ++blocks;
      if (rank < total || s > k) {
        cp.size = rank < total ? s : s - 1;
        cp.next_rank = rank < total ? rank : 0;
        if (rank == total) cp.certified.push_back(s);
        if (opt.checkpoint) detail::write_checkpoint(*opt.checkpoint, cp);
      }
      if (opt.max_blocks && blocks >= opt.max_blocks && (rank < total || s > k)) {
        res.complete = false;
        res.certified_full_sizes = cp.certified;
        res.subsets_checked = cp.subsets_checked;
        res.note = "interrupted; resume from checkpoint";
        return res;
      }
    }
    if (hit) {
      const auto c = unrank_combination(*hit, order, s);
      res.max_nonfull_size = s;
      res.witness = detail::set_from_combination(g, c);
      res.witness_ksum_size = ksum_set(res.witness, k).size();
      if (res.witness_ksum_size == order) throw Error("max_nonfull_size: witness re-check failed");
      res.subsets_checked = cp.subsets_checked + (*hit - rank) + 1;
      res.certified_full_sizes = cp.certified;
      res.ratio = Rational(s, order);
      if (s < k + 2) res.note = "extremal size below k+2: k is outside [2, |A|-2] at this size";
      if (opt.checkpoint) std::filesystem::remove(*opt.checkpoint);
      return res;
    }
  }
  // Unreachable for order >= 2: a k-subset has a single k-sum.
  throw Error("max_nonfull_size: no non-covering set found");
}

/// Largest non-covering union of cosets over all proper nontrivial
/// subgroups of index <= 20. A lower bound on max_nonfull_size only.
inline ExtremalResult witness_only_search(const GroupSpec& g, std::uint32_t k, const SearchOptions& opt = {}) {
  if (k < 2) throw Error("witness_only_search requires k >= 2");
  ExtremalResult best;
  best.group = g;
  best.k = k;
  best.exact = false;
  best.witness = GroupSet(g);
  best.ratio = 0;
  for (const auto& h : enumerate_subgroups(g, opt.limits.max_subgroup_order)) {
    if (h.size() == 1 || h.size() == g.order()) continue;
    const auto cosets = cosets_of(h);
    if (cosets.size() > 20) continue;
    const std::uint64_t m = cosets.size();
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << m); ++mask) {
      GroupSet a(g);
      for (std::uint64_t i = 0; i < m; ++i)
        if (mask >> i & 1U) a |= cosets[i];
      const auto n = a.size();
      if (n < k || n < best.max_nonfull_size) continue;
      ++best.subsets_checked;
      const auto sz = ksum_set(a, k).size();
      if (sz == g.order()) continue;
      if (n > best.max_nonfull_size || lex_less(a, best.witness)) {
        best.max_nonfull_size = static_cast<std::uint32_t>(n);
        best.witness = a;
        best.witness_ksum_size = sz;
      }
    }
  }
  best.ratio = Rational(best.max_nonfull_size, g.order());
  best.note = "lower bound from unions of cosets";
  return best;
}

struct CkResult {
  std::uint64_t n = 0;
  std::uint32_t k = 0;
  std::vector<ExtremalResult> classes;
  Rational value;
  bool exact = true;
  bool complete = true;
};

inline Json to_json(const CkResult& r) {
  Json j;
  j["n"] = r.n;
  j["k"] = r.k;
  Json cls = Json::array();
  for (const auto& c : r.classes) cls.push_back(to_json(c));
  j["classes"] = std::move(cls);
  j["c_k_n"] = rational_str(r.value);
  j["kind"] = r.exact ? "exact" : "lower_bound";
  j["complete"] = r.complete;
  return j;
}

/// c_k(n) as max over the classes of order n of max_nonfull_size / n.
inline CkResult ck_of_order(std::uint64_t n, std::uint32_t k, bool even_ok = false, bool witness_only = false,
                            const SearchOptions& opt = {}) {
  if (n % 2 == 0 && !even_ok) throw Error("ck_of_order: n must be odd (pass even_ok to override)");
  if (!witness_only && n > opt.limits.max_search_order)
    throw Error("ck_of_order: n exceeds search cap " + std::to_string(opt.limits.max_search_order));
  CkResult out;
  out.n = n;
  out.k = k;
  out.value = 0;
  out.exact = !witness_only;
  for (const auto& g : enumerate_abelian_groups(n, opt.limits.max_parse_order)) {
    auto r = witness_only ? witness_only_search(g, k, opt) : max_nonfull_size(g, k, opt);
    out.complete = out.complete && r.complete;
    if (r.ratio > out.value) out.value = r.ratio;
    out.classes.push_back(std::move(r));
  }
  return out;
}

/// For odd |G|: every A with |A| >= (|G|+3)/2 has 2∧A = G.
inline VerifyReport covering_threshold_check(const GroupSpec& g, const VerifyOptions& opt = {}) {
  Stopwatch clock;
  if (g.order() % 2 == 0) throw Error("covering_threshold_check requires odd order");
  if (g.order() > opt.limits.max_search_order)
    throw Error("covering_threshold_check: order exceeds search cap " +
                std::to_string(opt.limits.max_search_order));
  const std::size_t threshold = (g.order() + 3) / 2;
  VerifyReport rep;
  rep.claim = "covering-threshold";
  rep.group = g.str();
  rep.params = {{"k", 2}, {"min_size", threshold}};
  rep.seed = opt.seed;
  const auto tally = detail::for_all_subsets(g, opt.jobs, [&](std::uint64_t mask, Tally& t) {
    const auto n = static_cast<std::size_t>(std::popcount(mask));
    if (n < threshold) return;
    ++t.checked;
    const auto a = GroupSet::from_mask(g, mask);
    const auto sums = opt.engine(g, a.elements(), 2)[2];
    if (!sums.is_whole())
      t.violate({detail::set_witness(a), 2, std::to_string(sums.size()), detail::eq(g.order())});
  });
  rep.absorb(tally);
  rep.elapsed_ms = clock.ms();
  return rep;
}

}  // namespace ksumlab
