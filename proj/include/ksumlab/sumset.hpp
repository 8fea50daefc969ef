#pragma once

// Sumsets A+B, kA, and restricted k-sums k∧A for sets and sequences.

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ksumlab/group.hpp"

namespace ksumlab {

/// A+B.
inline GroupSet sumset(const GroupSet& a, const GroupSet& b) {
  require_same_group(a, b);
  if (a.empty() || b.empty()) throw Error("sumset of an empty set");
  GroupSet out(a.group());
  b.for_each([&](Element y) { a.translate_into(y, out); });
  return out;
}

/// kA, sums of k not necessarily distinct elements.
inline GroupSet kfold_sumset(const GroupSet& a, int k) {
  if (k < 1) throw Error("kfold_sumset: k must be >= 1");
  if (a.empty()) throw Error("kfold_sumset of an empty set");
  GroupSet acc = a;
  for (int i = 1; i < k; ++i) acc = sumset(acc, a);
  return acc;
}

/// The group sum of every element of A.
inline Element sum_of_set(const GroupSet& a) {
  if (a.empty()) throw Error("sum_of_set of an empty set");
  Element s = a.group().zero();
  a.for_each([&](Element e) { s = a.group().add(s, e); });
  return s;
}

/// Layers 0..max_layer of the restricted-sum DP over the elements `items`
/// taken in the given order (repeats allowed, each occurrence used once).
/// layer[j] ends up as the set of sums of j items at distinct positions.
inline std::vector<GroupSet> ksum_layers(const GroupSpec& g, const std::vector<Element>& items,
                                         std::size_t max_layer) {
  std::vector<GroupSet> layers(max_layer + 1, GroupSet(g));
  layers[0].insert(g.zero());
  std::size_t seen = 0;
  for (Element a : items) {
    ++seen;
    const std::size_t top = std::min(seen, max_layer);
    for (std::size_t j = top; j >= 1; --j) layers[j - 1].translate_into(a, layers[j]);
  }
  return layers;
}

/// Family {j∧A : 0 <= j <= |A|} (or the sequence analogue).
struct KSumTable {
  GroupSpec group;
  std::vector<GroupSet> layers;

  const GroupSet& operator[](std::size_t j) const { return layers.at(j); }
  std::size_t max_k() const noexcept { return layers.empty() ? 0 : layers.size() - 1; }
};

/// k∧A via the layered DP, elements in ascending index order.
inline GroupSet ksum_set(const GroupSet& a, std::size_t k) {
  const auto n = a.size();
  if (k > n) throw Error("ksum_set: k=" + std::to_string(k) + " exceeds |A|=" + std::to_string(n));
  return ksum_layers(a.group(), a.elements(), k)[k];
}

inline KSumTable ksum_table(const GroupSet& a) {
  if (a.empty()) throw Error("ksum_table of an empty set");
  return {a.group(), ksum_layers(a.group(), a.elements(), a.size())};
}

/// Pluggable table builder; verification suites call through one of these so
/// a deliberately broken DP can be swapped in to show the checks have teeth.
/// Must return layers 0..max_k for the given item list.
using KSumEngine =
    std::function<std::vector<GroupSet>(const GroupSpec&, const std::vector<Element>&, std::size_t)>;

inline KSumEngine default_engine() { return &ksum_layers; }

/// A sequence over G stored as element -> multiplicity (each >= 1).
class GSequence {
public:
  explicit GSequence(GroupSpec g) : group_(std::move(g)) {}

  GSequence(GroupSpec g, std::map<Element, std::uint32_t> mult) : group_(std::move(g)) {
    for (auto [e, m] : mult) add(e, m);
  }

  void add(Element e, std::uint32_t m = 1) {
    if (!group_.valid(e)) throw Error("sequence element out of range");
    if (m == 0) throw Error("multiplicity must be >= 1");
    mult_[e] += m;
    length_ += m;
  }

  const GroupSpec& group() const noexcept { return group_; }
  const std::map<Element, std::uint32_t>& multiplicities() const noexcept { return mult_; }
  std::size_t length() const noexcept { return length_; }
  std::size_t support_size() const noexcept { return mult_.size(); }

  /// Multiset expansion in ascending element order.
  std::vector<Element> expanded() const {
    std::vector<Element> out;
    out.reserve(length_);
    for (auto [e, m] : mult_) out.insert(out.end(), m, e);
    return out;
  }

  friend bool operator==(const GSequence& a, const GSequence& b) {
    return a.group_ == b.group_ && a.mult_ == b.mult_;
  }

private:
  GroupSpec group_;
  std::map<Element, std::uint32_t> mult_;
  std::size_t length_ = 0;
};

/// Sums of k entries at distinct positions of the sequence.
inline GroupSet ksum_sequence(const GSequence& s, std::size_t k) {
  if (s.length() == 0) throw Error("ksum_sequence of an empty sequence");
  if (k > s.length())
    throw Error("ksum_sequence: k=" + std::to_string(k) + " exceeds length " +
                std::to_string(s.length()));
  return ksum_layers(s.group(), s.expanded(), k)[k];
}

inline KSumTable ksum_table(const GSequence& s) {
  if (s.length() == 0) throw Error("ksum_table of an empty sequence");
  return {s.group(), ksum_layers(s.group(), s.expanded(), s.length())};
}

}  // namespace ksumlab
