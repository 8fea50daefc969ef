#pragma once

// Classifiers for the special sets that appear in the equality cases:
// cosets, 2-cosets, almost 2-cosets, unions of two order-2 cosets, C(A),
// and the support/progression predicates for sequences.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ksumlab/group.hpp"
#include "ksumlab/sumset.hpp"

namespace ksumlab {

enum class EqualityCase {
  NotEquality,
  CosetOfSubgroup,
  TwoCosetException,
  AlmostTwoCoset,
  UnionTwoOrderTwoCosets,
  SeqSupportCoset,
  SeqTwoSupport,
  SeqAP3Middle,
};

inline constexpr std::string_view to_string(EqualityCase c) {
  switch (c) {
    case EqualityCase::NotEquality: return "NotEquality";
    case EqualityCase::CosetOfSubgroup: return "CosetOfSubgroup";
    case EqualityCase::TwoCosetException: return "TwoCosetException";
    case EqualityCase::AlmostTwoCoset: return "AlmostTwoCoset";
    case EqualityCase::UnionTwoOrderTwoCosets: return "UnionTwoOrderTwoCosets";
    case EqualityCase::SeqSupportCoset: return "SeqSupportCoset";
    case EqualityCase::SeqTwoSupport: return "SeqTwoSupport";
    case EqualityCase::SeqAP3Middle: return "SeqAP3Middle";
  }
  return "NotEquality";
}

/// {g : g + S = S}.
inline GroupSet stabilizer(const GroupSet& s) {
  if (s.empty()) throw Error("stabilizer of an empty set");
  const auto& g = s.group();
  const Element a0 = s.min();
  GroupSet out(g);
  // Any stabilizing g maps a0 into S, so only g in S - a0 are candidates.
  s.for_each([&](Element x) {
    const Element cand = g.sub(x, a0);
    if (s.translate(cand) == s) out.insert(cand);
  });
  return out;
}

/// Witness subgroup H = A - min(A) when A is a coset.
inline std::optional<GroupSet> coset_witness(const GroupSet& a) {
  if (a.empty()) return std::nullopt;
  GroupSet h = a.translate(a.group().neg(a.min()));
  if (!is_subgroup(h)) return std::nullopt;
  return h;
}

inline bool is_coset(const GroupSet& a) { return coset_witness(a).has_value(); }

inline bool is_elementary_2(const GroupSet& h) {
  const auto& g = h.group();
  bool ok = true;
  h.for_each([&](Element x) {
    if (g.add(x, x) != g.zero()) ok = false;
  });
  return ok;
}

inline bool is_2coset(const GroupSet& a) {
  auto h = coset_witness(a);
  return h && is_elementary_2(*h);
}

inline bool has_order_two_element(const GroupSpec& g) {
  for (auto n : g.factors())
    if (n % 2 == 0) return true;
  return false;
}

/// A is a 2-coset with one element removed.
inline bool is_almost_2coset(const GroupSet& a) {
  if (a.empty()) return false;
  const auto& g = a.group();
  if (a.size() == 1) return has_order_two_element(g);
  const GroupSet diffs = a.translate(g.neg(a.min()));
  const GroupSet h = subgroup_generated(diffs);
  return h.size() == a.size() + 1 && is_elementary_2(h);
}

/// Reference definition: some x outside A makes A ∪ {x} a 2-coset.
inline bool is_almost_2coset_by_search(const GroupSet& a) {
  const auto& g = a.group();
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    if (a.contains(Element{x})) continue;
    GroupSet b = a;
    b.insert(Element{x});
    if (is_2coset(b)) return true;
  }
  return false;
}

/// |A| = 4 and A = Q1 ∪ Q2 for distinct cosets of some {0, h}, 2h = 0.
inline bool is_union_two_order2_cosets(const GroupSet& a) {
  if (a.size() != 4) throw Error("is_union_two_order2_cosets requires |A| = 4");
  const auto& g = a.group();
  const Element a0 = a.min();
  bool found = false;
  a.for_each([&](Element x) {
    if (found || x == a0) return;
    const Element h = g.sub(x, a0);
    if (g.add(h, h) == g.zero() && a.translate(h) == a) found = true;
  });
  return found;
}

/// Coset data for repeated C(A) queries in one group.
struct CosetCatalog {
  GroupSpec group;
  // Every coset of every subgroup, with |H|.
  std::vector<std::pair<GroupSet, std::size_t>> cosets;

  explicit CosetCatalog(const GroupSpec& g, std::uint64_t bound = Limits{}.max_subgroup_order)
      : group(g) {
    for (const auto& h : enumerate_subgroups(g, bound))
      for (auto& q : cosets_of(h)) cosets.emplace_back(std::move(q), h.size());
  }

  std::set<std::size_t> sizes_contained(const GroupSet& a) const {
    std::set<std::size_t> out;
    for (const auto& [q, h] : cosets)
      if (q.is_subset_of(a)) out.insert(h);
    return out;
  }
};

/// C(A): sizes h such that a coset of an order-h subgroup lies inside A.
inline std::set<std::size_t> coset_sizes_contained(const GroupSet& a,
                                                   std::uint64_t bound = Limits{}.max_subgroup_order) {
  if (a.empty()) throw Error("coset_sizes_contained of an empty set");
  return CosetCatalog(a.group(), bound).sizes_contained(a);
}

/// Predicted equality case for |k∧A| = |A| (or |A|-1 for the 2-coset
/// exception). Requires 2 <= k <= |A|-2.
inline EqualityCase classify_equality_case(const GroupSet& a, std::size_t k) {
  const auto n = a.size();
  if (n < 4 || k < 2 || k > n - 2)
    throw Error("classify_equality_case: need 2 <= k <= |A|-2 (k=" + std::to_string(k) +
                ", |A|=" + std::to_string(n) + ")");
  const bool edge_k = k == 2 || k == n - 2;
  const auto witness = coset_witness(a);
  if (edge_k && witness && is_elementary_2(*witness)) return EqualityCase::TwoCosetException;
  if (witness) return EqualityCase::CosetOfSubgroup;
  if (edge_k) {
    if (is_almost_2coset(a)) return EqualityCase::AlmostTwoCoset;
    if (n == 4 && is_union_two_order2_cosets(a)) return EqualityCase::UnionTwoOrderTwoCosets;
  }
  return EqualityCase::NotEquality;
}

/// S(A).
inline GroupSet support(const GSequence& s) {
  GroupSet out(s.group());
  for (auto [e, m] : s.multiplicities()) out.insert(e);
  return out;
}

/// S_j(A): elements with multiplicity >= j.
inline GroupSet support_at_least(const GSequence& s, std::uint32_t j) {
  if (j < 1) throw Error("support_at_least: j must be >= 1");
  GroupSet out(s.group());
  for (auto [e, m] : s.multiplicities())
    if (m >= j) out.insert(e);
  return out;
}

/// S(A) = {x, x+d, x+2d} (three distinct elements) and S_2(A) = {x+d}.
inline bool is_ap3_middle_only(const GSequence& s) {
  if (s.support_size() != 3) return false;
  const auto repeated = support_at_least(s, 2);
  if (repeated.size() != 1) return false;
  const auto& g = s.group();
  const Element mid = repeated.min();
  std::vector<Element> ends;
  for (auto [e, m] : s.multiplicities())
    if (e != mid) ends.push_back(e);
  return g.add(ends[0], ends[1]) == g.add(mid, mid);
}

/// First matching case of the sequence characterization, else NotEquality.
inline EqualityCase classify_sequence_case(const GSequence& s) {
  const auto supp = support(s);
  if (is_coset(supp)) return EqualityCase::SeqSupportCoset;
  if (supp.size() == 2 && support_at_least(s, 2).size() == 1) return EqualityCase::SeqTwoSupport;
  if (is_ap3_middle_only(s)) return EqualityCase::SeqAP3Middle;
  return EqualityCase::NotEquality;
}

}  // namespace ksumlab
