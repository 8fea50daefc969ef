#pragma once

// Exhaustive verification of the k-sum results at desk scale. Each routine
// enumerates its instance family, checks the claim on every instance and
// returns a VerifyReport with violations and an equality census.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "ksumlab/coloring.hpp"
#include "ksumlab/combinatorics.hpp"
#include "ksumlab/group.hpp"
#include "ksumlab/literal.hpp"
#include "ksumlab/parallel.hpp"
#include "ksumlab/report.hpp"
#include "ksumlab/structure.hpp"
#include "ksumlab/sumset.hpp"

namespace ksumlab {

struct VerifyOptions {
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  Limits limits;
  KSumEngine engine = default_engine();
  // Sequence enumeration keeps one representative per translation orbit.
  bool orbit_reduction = false;
};

namespace detail {

inline void require_order_cap(const GroupSpec& g, std::uint64_t cap, const char* what) {
  if (g.order() > cap)
    throw Error(std::string(what) + ": group order " + std::to_string(g.order()) +
                " exceeds exhaustive cap " + std::to_string(cap));
  if (g.order() > 63) throw Error(std::string(what) + ": subset enumeration limited to order <= 63");
}

inline std::string set_witness(const GroupSet& a) { return "{" + to_literal(a) + "}"; }

inline std::string eq(std::size_t v) { return "== " + std::to_string(v); }
inline std::string gt(std::size_t v) { return "> " + std::to_string(v); }
inline std::string ge(std::size_t v) { return ">= " + std::to_string(v); }

/// Runs fn(mask, tally) for every mask in [0, 2^order) on `jobs` threads.
template <class Fn>
Tally for_all_subsets(const GroupSpec& g, unsigned jobs, Fn&& fn) {
  const std::uint64_t total = std::uint64_t{1} << g.order();
  auto parts = parallel_chunks<Tally>(total, jobs, [&](std::uint64_t b, std::uint64_t e) {
    Tally t;
    for (std::uint64_t m = b; m < e; ++m) fn(m, t);
    return t;
  });
  Tally all;
  for (const auto& p : parts) all.merge(p);
  return all;
}

}  // namespace detail

/// |k∧A| >= |A| for 2 <= k <= |A|-2 with the 2-coset exception, and equality
/// exactly on the predicted census.
inline VerifyReport verify_theorem_main(const GroupSpec& g, std::size_t min_size, std::size_t max_size,
                                        const VerifyOptions& opt = {}) {
  Stopwatch clock;
  detail::require_order_cap(g, opt.limits.max_exhaustive_order, "verify_theorem_main");
  min_size = std::max<std::size_t>(min_size, 4);
  max_size = std::min<std::size_t>(max_size, g.order());
  VerifyReport rep;
  rep.claim = "theorem-main";
  rep.group = g.str();
  rep.params = {{"min_size", min_size}, {"max_size", max_size}};
  rep.seed = opt.seed;
  const auto tally = detail::for_all_subsets(g, opt.jobs, [&](std::uint64_t mask, Tally& t) {
    const auto n = static_cast<std::size_t>(std::popcount(mask));
    if (n < min_size || n > max_size) return;
    const auto a = GroupSet::from_mask(g, mask);
    const auto layers = opt.engine(g, a.elements(), n - 2);
    for (std::size_t k = 2; k + 2 <= n; ++k) {
      ++t.checked;
      const auto tag = classify_equality_case(a, k);
      const auto observed = layers[k].size();
      std::string required;
      bool ok = false;
      switch (tag) {
        case EqualityCase::TwoCosetException:
          ok = observed == n - 1;
          required = detail::eq(n - 1);
          break;
        case EqualityCase::NotEquality:
          ok = observed > n;
          required = detail::gt(n);
          break;
        default:
          ok = observed == n;
          required = detail::eq(n);
          break;
      }
      t.count(std::string(to_string(tag)));
      if (!ok)
        t.violate({detail::set_witness(a), static_cast<std::int64_t>(k), std::to_string(observed),
                   required + " (" + std::string(to_string(tag)) + ")"});
    }
  });
  rep.absorb(tally);
  rep.elapsed_ms = clock.ms();
  return rep;
}

inline VerifyReport verify_theorem_main(const GroupSpec& g, const VerifyOptions& opt = {}) {
  return verify_theorem_main(g, 4, g.order(), opt);
}

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// |k∧A| >= min{p, k(|A|-k)+1} for every A ⊆ Z_p and 1 <= k <= |A|.
inline VerifyReport verify_dds_bound(std::uint32_t p, const VerifyOptions& opt = {}) {
  Stopwatch clock;
  if (!is_prime(p)) throw Error("verify_dds_bound: " + std::to_string(p) + " is not prime");
  const GroupSpec g({p});
  detail::require_order_cap(g, opt.limits.max_exhaustive_order, "verify_dds_bound");
  VerifyReport rep;
  rep.claim = "dds-bound";
  rep.group = g.str();
  rep.params = {{"p", p}};
  rep.seed = opt.seed;
  const auto tally = detail::for_all_subsets(g, opt.jobs, [&](std::uint64_t mask, Tally& t) {
    const auto n = static_cast<std::size_t>(std::popcount(mask));
    if (n == 0) return;
    const auto a = GroupSet::from_mask(g, mask);
    const auto layers = opt.engine(g, a.elements(), n);
    for (std::size_t k = 1; k <= n; ++k) {
      ++t.checked;
      const std::size_t bound = std::min<std::size_t>(p, k * (n - k) + 1);
      const auto observed = layers[k].size();
      if (observed == bound) t.count("tight");
      if (observed < bound)
        t.violate({detail::set_witness(a), static_cast<std::int64_t>(k), std::to_string(observed),
                   detail::ge(bound)});
    }
  });
  rep.absorb(tally);
  rep.elapsed_ms = clock.ms();
  return rep;
}

/// For every coset Q and 1 <= k <= |Q|-1: k∧Q = kQ, except that a 2-coset
/// at k in {2, |Q|-2} misses exactly one element of kQ.
inline VerifyReport verify_corollary_coset(const GroupSpec& g, const VerifyOptions& opt = {}) {
  Stopwatch clock;
  VerifyReport rep;
  rep.claim = "corollary-coset";
  rep.group = g.str();
  rep.seed = opt.seed;
  std::vector<GroupSet> cosets;
  for (const auto& h : enumerate_subgroups(g, opt.limits.max_subgroup_order))
    for (auto& q : cosets_of(h)) cosets.push_back(std::move(q));
  rep.params = {{"cosets", cosets.size()}};
  auto parts = parallel_chunks<Tally>(cosets.size(), opt.jobs, [&](std::uint64_t b, std::uint64_t e) {
    Tally t;
    for (auto i = b; i < e; ++i) {
      const auto& q = cosets[i];
      const auto n = q.size();
      if (n < 2) continue;
      const bool two = is_2coset(q);
      const auto layers = opt.engine(g, q.elements(), n - 1);
      for (std::size_t k = 1; k + 1 <= n; ++k) {
        ++t.checked;
        const auto kq = kfold_sumset(q, static_cast<int>(k));
        const auto& kw = layers[k];
        const bool exception = two && (k == 2 || k == n - 2);
        bool ok = kw.is_subset_of(kq);
        if (exception) {
          ok = ok && kw.size() + 1 == kq.size();
          t.count("all_but_one");
        } else {
          ok = ok && kw == kq;
          t.count("exact");
        }
        if (!ok)
          t.violate({detail::set_witness(q), static_cast<std::int64_t>(k),
                     "|k∧Q|=" + std::to_string(kw.size()) + " |kQ|=" + std::to_string(kq.size()),
                     exception ? "k∧Q = kQ minus one element" : "k∧Q = kQ"});
      }
    }
    return t;
  });
  Tally all;
  for (const auto& p : parts) all.merge(p);
  rep.absorb(all);
  rep.elapsed_ms = clock.ms();
  return rep;
}

/// Subset of some 2-coset: A - min(A) generates an elementary 2-subgroup.
inline bool in_some_2coset(const GroupSet& a) {
  if (a.empty()) return false;
  return is_elementary_2(subgroup_generated(a.translate(a.group().neg(a.min()))));
}

/// The four 2-sum lemmas, each on its hypothesis class:
///   two_coset:     |A| >= 3:                  |2∧A| < |A|  <=>  2-coset
///   inside_2coset: A inside a 2-coset:        |2∧A| > |A| unless 2-coset / almost 2-coset
///   doubling:      |A| >= 5, not almost:      |2∧A| <= |A| <=> |A+A| = |A|
///   size_four:     |A| = 4, |2∧A| = 4:        union of two order-2 cosets
inline VerifyReport verify_2sum_lemmas(const GroupSpec& g, const VerifyOptions& opt = {}) {
  Stopwatch clock;
  detail::require_order_cap(g, opt.limits.max_exhaustive_order, "verify_2sum_lemmas");
  VerifyReport rep;
  rep.claim = "2sum-lemmas";
  rep.group = g.str();
  rep.seed = opt.seed;
  const auto tally = detail::for_all_subsets(g, opt.jobs, [&](std::uint64_t mask, Tally& t) {
    const auto n = static_cast<std::size_t>(std::popcount(mask));
    if (n == 0) return;
    const auto a = GroupSet::from_mask(g, mask);
    const auto two_sums = opt.engine(g, a.elements(), std::min<std::size_t>(2, n));
    const std::size_t s2 = n >= 2 ? two_sums[2].size() : 0;
    const bool two_coset = is_2coset(a);
    const bool almost = is_almost_2coset(a);
    const auto w = detail::set_witness(a);
    if (n >= 3) {
      ++t.checked;
      t.count("two_coset");
      if ((s2 < n) != two_coset)
        t.violate({w, 2, "|2∧A|=" + std::to_string(s2) + (two_coset ? " (2-coset)" : ""),
                   "|2∧A| < |A| iff 2-coset"});
    }
    if (in_some_2coset(a)) {
      ++t.checked;
      t.count("inside_2coset");
      if (!two_coset && !almost && !(s2 > n))
        t.violate({w, 2, "|2∧A|=" + std::to_string(s2), detail::gt(n)});
    }
    if (n >= 5 && !almost) {
      ++t.checked;
      t.count("doubling");
      const bool small = s2 <= n;
      const bool coset = sumset(a, a).size() == n;
      if (small != coset)
        t.violate({w, 2, "|2∧A|=" + std::to_string(s2) + " |A+A|" + (coset ? "=" : "!=") + "|A|",
                   "|2∧A| <= |A| iff |A+A| = |A|"});
    }
    if (n == 4 && s2 == 4) {
      ++t.checked;
      t.count("size_four");
      if (!is_union_two_order2_cosets(a))
        t.violate({w, 2, "not a union of two order-2 cosets", "union of two order-2 cosets"});
    }
  });
  rep.absorb(tally);
  rep.elapsed_ms = clock.ms();
  return rep;
}

/// Even |A| >= 6 with |A|/2 in C(A) and |A| not in C(A): |k∧A| > |A| for
/// 3 <= k <= |A|-3.
inline VerifyReport verify_lemma_aot(const GroupSpec& g, const VerifyOptions& opt = {}) {
  Stopwatch clock;
  detail::require_order_cap(g, opt.limits.max_exhaustive_order, "verify_lemma_aot");
  VerifyReport rep;
  rep.claim = "lemma-aot";
  rep.group = g.str();
  rep.seed = opt.seed;
  const CosetCatalog catalog(g, opt.limits.max_subgroup_order);
  const auto tally = detail::for_all_subsets(g, opt.jobs, [&](std::uint64_t mask, Tally& t) {
    const auto n = static_cast<std::size_t>(std::popcount(mask));
    if (n < 6 || n % 2) return;
    const auto a = GroupSet::from_mask(g, mask);
    const auto sizes = catalog.sizes_contained(a);
    if (!sizes.contains(n / 2) || sizes.contains(n)) return;
    t.count("qualifying_sets");
    const auto layers = opt.engine(g, a.elements(), n - 3);
    for (std::size_t k = 3; k + 3 <= n; ++k) {
      ++t.checked;
      const auto observed = layers[k].size();
      if (observed <= n)
        t.violate({detail::set_witness(a), static_cast<std::int64_t>(k), std::to_string(observed),
                   detail::gt(n)});
    }
  });
  rep.absorb(tally);
  rep.elapsed_ms = clock.ms();
  return rep;
}

/// Every A with |A| >= 5 yields a subset B meeting the 2-sum contract.
inline VerifyReport verify_prop_ttk(const GroupSpec& g, const VerifyOptions& opt = {}) {
  Stopwatch clock;
  detail::require_order_cap(g, opt.limits.max_exhaustive_order, "verify_prop_ttk");
  VerifyReport rep;
  rep.claim = "prop-ttk";
  rep.group = g.str();
  rep.seed = opt.seed;
  SubsetSearchOptions sopt;
  sopt.seed = opt.seed;
  const auto tally = detail::for_all_subsets(g, opt.jobs, [&](std::uint64_t mask, Tally& t) {
    const auto n = static_cast<std::size_t>(std::popcount(mask));
    if (n < 5) return;
    const auto a = GroupSet::from_mask(g, mask);
    ++t.checked;
    const auto two_a = opt.engine(g, a.elements(), 2)[2].size();
    const auto w = detail::set_witness(a);
    TwoSumSubset r{GroupSet(g)};
    try {
      r = find_2sum_rich_subset(a, sopt);
    } catch (const Error& e) {
      t.violate({w, 2, e.what(), "subset exists"});
      return;
    }
    const auto& b = r.subset;
    const auto two_b = opt.engine(g, b.elements(), 2)[2].size();
    const bool rich = two_a >= n;
    t.count(rich ? "rich" : "two_coset");
    const std::size_t want_size = rich ? (n + 3) / 2 : n / 2 + 1;
    const bool ok = b.is_subset_of(a) && b.size() == want_size && (rich ? two_b >= n : two_b == n - 1);
    if (!ok)
      t.violate({w + " B=" + detail::set_witness(b), 2,
                 "|B|=" + std::to_string(b.size()) + " |2∧B|=" + std::to_string(two_b),
                 "|B|=" + std::to_string(want_size) + " |2∧B| " + (rich ? detail::ge(n) : detail::eq(n - 1))});
  });
  rep.absorb(tally);
  rep.elapsed_ms = clock.ms();
  return rep;
}

/// All sequences over g of length in [4, max_len] with |A| > |S(A)|, in a
/// fixed order (length, then multiplicity vectors in reverse-lex order).
inline std::vector<GSequence> enumerate_sequences(const GroupSpec& g, std::size_t max_len,
                                                  bool orbit_reduction = false) {
  std::vector<GSequence> out;
  const auto order = g.order();
  std::vector<std::uint32_t> mult(order, 0);
  const auto canonical = [&] {
    // Keep the translate whose multiplicity vector is lexicographically largest.
    for (std::uint32_t s = 1; s < order; ++s) {
      for (std::uint32_t x = 0; x < order; ++x) {
        const auto y = mult[g.add(Element{x}, Element{s}).index];
        if (y != mult[x]) {
          if (y > mult[x]) return false;
          break;
        }
      }
    }
    return true;
  };
  const auto emit = [&] {
    std::size_t supp = 0;
    bool repeated = false;
    for (auto m : mult) {
      supp += m > 0;
      repeated |= m > 1;
    }
    if (!repeated) return;
    if (orbit_reduction && !canonical()) return;
    GSequence s(g);
    for (std::uint32_t x = 0; x < order; ++x)
      if (mult[x]) s.add(Element{x}, mult[x]);
    out.push_back(std::move(s));
  };
  for (std::size_t len = 4; len <= max_len; ++len) {
    // Compositions of len into `order` non-negative parts.
    const auto rec = [&](auto&& self, std::uint32_t pos, std::size_t left) -> void {
      if (pos + 1 == order) {
        mult[pos] = static_cast<std::uint32_t>(left);
        emit();
        return;
      }
      for (std::size_t m = left + 1; m-- > 0;) {
        mult[pos] = static_cast<std::uint32_t>(m);
        self(self, pos + 1, left - m);
      }
    };
    rec(rec, 0, len);
  }
  return out;
}

/// |k∧A| >= |S(A)| for sequences with |A| > |S(A)|, equality exactly on the
/// support-coset / two-support / AP3-middle cases.
inline VerifyReport verify_theorem_mainseq(const GroupSpec& g, std::size_t max_len = 8,
                                           const VerifyOptions& opt = {}) {
  Stopwatch clock;
  detail::require_order_cap(g, opt.limits.max_exhaustive_order, "verify_theorem_mainseq");
  VerifyReport rep;
  rep.claim = "theorem-mainseq";
  rep.group = g.str();
  rep.seed = opt.seed;
  const auto seqs = enumerate_sequences(g, max_len, opt.orbit_reduction);
  rep.params = {{"max_len", max_len}, {"sequences", seqs.size()}, {"orbit_reduction", opt.orbit_reduction}};
  auto parts = parallel_chunks<Tally>(seqs.size(), opt.jobs, [&](std::uint64_t b, std::uint64_t e) {
    Tally t;
    for (auto i = b; i < e; ++i) {
      const auto& s = seqs[i];
      const auto len = s.length();
      const auto supp = s.support_size();
      const auto tag = classify_sequence_case(s);
      const auto layers = opt.engine(g, s.expanded(), len - 2);
      for (std::size_t k = 2; k + 2 <= len; ++k) {
        ++t.checked;
        const auto observed = layers[k].size();
        const bool predicted_eq = tag != EqualityCase::NotEquality;
        t.count(std::string(to_string(tag)));
        const bool ok = predicted_eq ? observed == supp : observed > supp;
        if (!ok)
          t.violate({"[" + to_literal(s) + "]", static_cast<std::int64_t>(k), std::to_string(observed),
                     (predicted_eq ? detail::eq(supp) : detail::gt(supp)) + " (" +
                         std::string(to_string(tag)) + ")"});
      }
    }
    return t;
  });
  Tally all;
  for (const auto& p : parts) all.merge(p);
  rep.absorb(all);
  rep.elapsed_ms = clock.ms();
  return rep;
}

/// p(a,n) >= 2a/n for all n in [n_lo, n_hi], 1 <= a <= n/2, with equality
/// exactly when a = n/2.
inline VerifyReport verify_lemma_prob(std::uint64_t n_lo, std::uint64_t n_hi, const VerifyOptions& opt = {}) {
  Stopwatch clock;
  if (n_lo < 5) throw Error("verify_lemma_prob requires n >= 5");
  VerifyReport rep;
  rep.claim = "lemma-prob";
  rep.group = "-";
  rep.params = {{"n_min", n_lo}, {"n_max", n_hi}};
  rep.seed = opt.seed;
  Tally t;
  for (auto n = n_lo; n <= n_hi; ++n)
    for (std::uint64_t a = 1; 2 * a <= n; ++a) {
      ++t.checked;
      const auto p = exact_pair_cover_probability(a, n).value;
      const Rational bound(2 * a, n);
      const bool equal = p == bound;
      if (equal) t.count("equality");
      const bool ok = p >= bound && equal == (2 * a == n);
      if (!ok)
        t.violate({"a=" + std::to_string(a) + " n=" + std::to_string(n), std::nullopt, rational_str(p),
                   ">= " + rational_str(bound) + (2 * a == n ? " with equality" : " strictly")});
    }
  rep.absorb(t);
  rep.elapsed_ms = clock.ms();
  return rep;
}

namespace detail {

/// One colouring's worth of the two-part colouring claim.
inline void graphprop_check(const Coloring& c, const std::string& label, Tally& t) {
  if (!validate_proper(c)) throw Error("verify_graphprop: improper colouring in corpus: " + label);
  const auto n = c.n();
  if (n < 5) return;
  const auto pal = c.palette_size();
  if (pal >= n) {
    ++t.checked;
    t.count("part_i");
    try {
      const auto r = find_rich_subset(c);
      if (r.vertices.size() != (n + 3) / 2 || colours_on(c, r.vertices) < n)
        t.violate({label, std::nullopt, "bad subset", "|U|=floor((n+3)/2) with >= n colours"});
    } catch (const Error& e) {
      t.violate({label, std::nullopt, e.what(), "qualifying U exists"});
    }
  } else if (pal == n - 1 && n % 2 == 0 && all_classes_perfect_matchings(c)) {
    ++t.checked;
    t.count("part_ii");
    const std::uint32_t s = n / 2 + 1;
    auto u = first_combination(s);
    std::vector<std::uint32_t> stamp(pal + 1, 0);
    std::uint32_t epoch = 0;
    do {
      t.count("part_ii_subsets");
      if (count_colours(c, u, stamp, ++epoch) != n - 1) {
        std::string us;
        for (auto v : u) us += (us.empty() ? "" : ",") + std::to_string(v);
        t.violate({label + " U={" + us + "}", std::nullopt, "fewer than n-1 colours", "n-1 colours"});
        break;
      }
    } while (next_combination(u, n));
  } else {
    t.count("excluded");
  }
}

}  // namespace detail

/// Colouring claim over an explicit corpus.
inline VerifyReport verify_graphprop(const std::vector<Coloring>& corpus, const std::string& label,
                                     const VerifyOptions& opt = {}) {
  Stopwatch clock;
  VerifyReport rep;
  rep.claim = "graphprop";
  rep.group = label;
  rep.params = {{"corpus_size", corpus.size()}};
  rep.seed = opt.seed;
  auto parts = parallel_chunks<Tally>(corpus.size(), opt.jobs, [&](std::uint64_t b, std::uint64_t e) {
    Tally t;
    for (auto i = b; i < e; ++i) detail::graphprop_check(corpus[i], label + "#" + std::to_string(i), t);
    return t;
  });
  Tally all;
  for (const auto& p : parts) all.merge(p);
  rep.absorb(all);
  rep.elapsed_ms = clock.ms();
  return rep;
}

/// Colouring claim over the colourings induced by every A ⊆ g with
/// min_size <= |A| <= max_size.
inline VerifyReport verify_graphprop_induced(const GroupSpec& g, std::size_t min_size, std::size_t max_size,
                                             const VerifyOptions& opt = {}) {
  Stopwatch clock;
  detail::require_order_cap(g, opt.limits.max_exhaustive_order, "verify_graphprop");
  VerifyReport rep;
  rep.claim = "graphprop";
  rep.group = g.str();
  rep.params = {{"min_size", min_size}, {"max_size", max_size}};
  rep.seed = opt.seed;
  const auto tally = detail::for_all_subsets(g, opt.jobs, [&](std::uint64_t mask, Tally& t) {
    const auto n = static_cast<std::size_t>(std::popcount(mask));
    if (n < std::max<std::size_t>(min_size, 2) || n > max_size) return;
    const auto a = GroupSet::from_mask(g, mask);
    detail::graphprop_check(induced_coloring(a), detail::set_witness(a), t);
  });
  rep.absorb(tally);
  rep.elapsed_ms = clock.ms();
  return rep;
}

/// Round-robin factorizations for the given even n.
inline std::vector<Coloring> round_robin_corpus(const std::vector<std::uint32_t>& ns) {
  std::vector<Coloring> out;
  for (auto n : ns) out.push_back(round_robin_coloring(n));
  return out;
}

}  // namespace ksumlab
