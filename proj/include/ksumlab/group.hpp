#pragma once

// Finite abelian groups given as products of cyclic factors, dense subsets
// over them, and the subgroup/coset machinery built on top.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace ksumlab {

/// Raised for malformed input or violated preconditions.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Enumeration and parsing caps. Every exhaustive routine takes one of these.
struct Limits {
  std::uint64_t max_parse_order = std::uint64_t{1} << 20;
  std::uint64_t max_subgroup_order = 64;
  std::uint64_t max_exhaustive_order = 20;
  std::uint64_t max_search_order = 21;
};

/// Element of a group, as a mixed-radix index with the first factor most
/// significant, so index order is lexicographic order on tuples.
struct Element {
  std::uint32_t index = 0;

  friend constexpr bool operator==(Element, Element) = default;
  friend constexpr auto operator<=>(Element, Element) = default;
};

namespace detail {

struct GroupData {
  std::vector<std::uint32_t> factors;
  std::vector<std::uint32_t> strides;
  std::uint32_t order = 1;
  // Full addition table when order <= kTableOrder.
  std::vector<std::uint32_t> add_table;
  std::vector<std::uint32_t> neg_table;
};

inline constexpr std::uint32_t kTableOrder = 1024;

}  // namespace detail

class GroupSpec {
public:
  GroupSpec() : GroupSpec(std::vector<std::uint32_t>{2}) {}

  explicit GroupSpec(std::vector<std::uint32_t> factors,
                     std::uint64_t max_order = Limits{}.max_parse_order) {
    if (factors.empty()) throw Error("group needs at least one cyclic factor");
    std::uint64_t order = 1;
    for (auto n : factors) {
      if (n < 2) throw Error("cyclic factor must be >= 2, got " + std::to_string(n));
      order *= n;
      if (order > max_order)
        throw Error("group order exceeds maximum " + std::to_string(max_order));
    }
    auto d = std::make_shared<detail::GroupData>();
    d->factors = std::move(factors);
    d->order = static_cast<std::uint32_t>(order);
    d->strides.assign(d->factors.size(), 1);
    for (std::size_t i = d->factors.size(); i-- > 1;)
      d->strides[i - 1] = d->strides[i] * d->factors[i];
    if (order <= detail::kTableOrder) build_tables(*d);
    data_ = std::move(d);
  }

  const std::vector<std::uint32_t>& factors() const noexcept { return data_->factors; }
  std::size_t rank() const noexcept { return data_->factors.size(); }
  std::uint32_t order() const noexcept { return data_->order; }
  bool is_cyclic_spec() const noexcept { return rank() == 1; }

  Element zero() const noexcept { return {0}; }

  bool valid(Element a) const noexcept { return a.index < order(); }

  std::vector<std::uint32_t> decode(Element a) const {
    std::vector<std::uint32_t> t(rank());
    for (std::size_t i = 0; i < rank(); ++i)
      t[i] = (a.index / data_->strides[i]) % data_->factors[i];
    return t;
  }

  Element encode(const std::vector<std::uint32_t>& t) const {
    if (t.size() != rank()) throw Error("tuple arity does not match group rank");
    std::uint32_t idx = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (t[i] >= data_->factors[i]) throw Error("tuple coordinate out of range");
      idx += t[i] * data_->strides[i];
    }
    return {idx};
  }

  Element add(Element a, Element b) const noexcept {
    if (!data_->add_table.empty())
      return {data_->add_table[std::size_t{a.index} * order() + b.index]};
    std::uint32_t idx = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      const auto s = data_->strides[i];
      const auto n = data_->factors[i];
      idx += ((a.index / s) % n + (b.index / s) % n) % n * s;
    }
    return {idx};
  }

  Element neg(Element a) const noexcept {
    if (!data_->neg_table.empty()) return {data_->neg_table[a.index]};
    std::uint32_t idx = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      const auto s = data_->strides[i];
      const auto n = data_->factors[i];
      idx += (n - (a.index / s) % n) % n * s;
    }
    return {idx};
  }

  Element sub(Element a, Element b) const noexcept { return add(a, neg(b)); }

  /// m·a for any integer m.
  Element scale(std::int64_t m, Element a) const noexcept {
    std::uint32_t idx = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      const auto s = data_->strides[i];
      const std::int64_t n = data_->factors[i];
      std::int64_t c = static_cast<std::int64_t>((a.index / s) % n);
      std::int64_t r = ((m % n) * c) % n;
      if (r < 0) r += n;
      idx += static_cast<std::uint32_t>(r) * s;
    }
    return {idx};
  }

  /// Least t >= 1 with t·a = 0: lcm over coordinates of n_i / gcd(n_i, a_i).
  std::uint64_t element_order(Element a) const noexcept {
    std::uint64_t t = 1;
    for (std::size_t i = 0; i < rank(); ++i) {
      const std::uint64_t n = data_->factors[i];
      const std::uint64_t c = (a.index / data_->strides[i]) % n;
      t = std::lcm(t, n / std::gcd(n, c));
    }
    return t;
  }

  /// "Z2xZ3" style name.
  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (i) s += 'x';
      s += 'Z' + std::to_string(data_->factors[i]);
    }
    return s;
  }

  /// Cyclic groups render as a bare integer, products as "(a1,...,ad)".
  std::string element_str(Element a) const {
    const auto t = decode(a);
    if (rank() == 1) return std::to_string(t[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(t[i]);
    }
    return s + ')';
  }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.data_ == b.data_ || a.data_->factors == b.data_->factors;
  }

private:
  static void build_tables(detail::GroupData& d) {
    const std::uint32_t n = d.order;
    const std::size_t r = d.factors.size();
    d.add_table.resize(std::size_t{n} * n);
    d.neg_table.resize(n);
    std::vector<std::vector<std::uint32_t>> tuples(n, std::vector<std::uint32_t>(r));
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::size_t i = 0; i < r; ++i) tuples[a][i] = (a / d.strides[i]) % d.factors[i];
    for (std::uint32_t a = 0; a < n; ++a) {
      std::uint32_t neg = 0;
      for (std::size_t i = 0; i < r; ++i)
        neg += (d.factors[i] - tuples[a][i]) % d.factors[i] * d.strides[i];
      d.neg_table[a] = neg;
      for (std::uint32_t b = 0; b < n; ++b) {
        std::uint32_t idx = 0;
        for (std::size_t i = 0; i < r; ++i)
          idx += (tuples[a][i] + tuples[b][i]) % d.factors[i] * d.strides[i];
        d.add_table[std::size_t{a} * n + b] = idx;
      }
    }
  }

  std::shared_ptr<const detail::GroupData> data_;
};

namespace detail {

inline std::uint64_t parse_uint(std::string_view tok, std::string_view whole) {
  if (tok.empty()) throw Error("malformed group spec '" + std::string(whole) + "': empty factor");
  std::uint64_t v = 0;
  for (char c : tok) {
    if (c < '0' || c > '9')
      throw Error("malformed group spec '" + std::string(whole) + "': bad token '" +
                  std::string(tok) + "'");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
    if (v > std::numeric_limits<std::uint32_t>::max())
      throw Error("factor too large in group spec '" + std::string(whole) + "'");
  }
  return v;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Accepts "Z<n>(xZ<n>)*" or a comma list "n1,n2,...".
inline GroupSpec parse_group_spec(std::string_view text,
                                  std::uint64_t max_order = Limits{}.max_parse_order) {
  const auto s = detail::trim(text);
  if (s.empty()) throw Error("empty group spec");
  std::vector<std::uint32_t> factors;
  if (s.front() == 'Z' || s.front() == 'z') {
    std::size_t pos = 0;
    while (pos <= s.size()) {
      auto next = s.find_first_of("xX", pos);
      auto tok = s.substr(pos, next == std::string_view::npos ? s.npos : next - pos);
      if (tok.empty() || (tok.front() != 'Z' && tok.front() != 'z'))
        throw Error("malformed group spec '" + std::string(s) + "': bad token '" +
                    std::string(tok) + "'");
      factors.push_back(static_cast<std::uint32_t>(detail::parse_uint(tok.substr(1), s)));
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
  } else {
    std::size_t pos = 0;
    while (true) {
      auto next = s.find(',', pos);
      auto tok = detail::trim(s.substr(pos, next == std::string_view::npos ? s.npos : next - pos));
      factors.push_back(static_cast<std::uint32_t>(detail::parse_uint(tok, s)));
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
  }
  return GroupSpec(std::move(factors), max_order);
}

/// Dense bit-indexed subset of a group.
class GroupSet {
public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  GroupSet() = default;
  explicit GroupSet(GroupSpec g) : group_(std::move(g)), words_(word_count(group_.order()), 0) {}

  GroupSet(GroupSpec g, std::initializer_list<std::uint32_t> indices) : GroupSet(std::move(g)) {
    for (auto i : indices) insert(Element{i});
  }

  static GroupSet from_elements(const GroupSpec& g, const std::vector<Element>& elems) {
    GroupSet s(g);
    for (auto e : elems) s.insert(e);
    return s;
  }

  /// Low bits of `mask` select elements 0..63; requires order <= 64.
  static GroupSet from_mask(const GroupSpec& g, std::uint64_t mask) {
    GroupSet s(g);
    if (g.order() < 64) mask &= (Word{1} << g.order()) - 1;
    s.words_[0] = mask;
    return s;
  }

  static GroupSet whole(const GroupSpec& g) {
    GroupSet s(g);
    for (std::uint32_t i = 0; i < g.order(); ++i) s.insert(Element{i});
    return s;
  }

  static GroupSet singleton(const GroupSpec& g, Element e) {
    GroupSet s(g);
    s.insert(e);
    return s;
  }

  const GroupSpec& group() const noexcept { return group_; }

  bool contains(Element e) const noexcept {
    return (words_[e.index / kWordBits] >> (e.index % kWordBits)) & 1U;
  }
  void insert(Element e) noexcept { words_[e.index / kWordBits] |= Word{1} << (e.index % kWordBits); }
  void erase(Element e) noexcept { words_[e.index / kWordBits] &= ~(Word{1} << (e.index % kWordBits)); }

  std::size_t size() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }
  bool is_whole() const noexcept { return size() == group_.order(); }

  /// Least element; precondition: non-empty.
  Element min() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w])
        return Element{static_cast<std::uint32_t>(w * kWordBits + std::countr_zero(words_[w]))};
    throw Error("min() of empty set");
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits) {
        const auto b = std::countr_zero(bits);
        f(Element{static_cast<std::uint32_t>(w * kWordBits + b)});
        bits &= bits - 1;
      }
    }
  }

  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(size());
    for_each([&](Element e) { out.push_back(e); });
    return out;
  }

  /// {x + g : x in this}.
  GroupSet translate(Element g) const {
    GroupSet out(group_);
    for_each([&](Element e) { out.insert(group_.add(e, g)); });
    return out;
  }

  /// out |= this + g, without allocating.
  void translate_into(Element g, GroupSet& out) const {
    for_each([&](Element e) { out.insert(group_.add(e, g)); });
  }

  /// {-x : x in this}.
  GroupSet negated() const {
    GroupSet out(group_);
    for_each([&](Element e) { out.insert(group_.neg(e)); });
    return out;
  }

  bool is_subset_of(const GroupSet& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  GroupSet& operator|=(const GroupSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  GroupSet& operator&=(const GroupSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  GroupSet& operator-=(const GroupSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend GroupSet operator|(GroupSet a, const GroupSet& b) { return a |= b; }
  friend GroupSet operator&(GroupSet a, const GroupSet& b) { return a &= b; }
  friend GroupSet operator-(GroupSet a, const GroupSet& b) { return a -= b; }

  friend bool operator==(const GroupSet& a, const GroupSet& b) {
    return a.group_ == b.group_ && std::equal(a.words_.begin(), a.words_.end(), b.words_.begin(),
                                              b.words_.end());
  }

  /// Lexicographic comparison of the sorted element lists.
  friend bool lex_less(const GroupSet& a, const GroupSet& b) {
    // Decided by e = min(a Δ b): the set holding e is smaller unless the
    // other set has nothing beyond e (then the other is a proper prefix).
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      const Word diff = a.words_[i] ^ b.words_[i];
      if (!diff) continue;
      const Word low = diff & (~diff + 1);
      const Word above = ~((low << 1) - 1);
      const auto has_above = [&](const GroupSet& s) {
        if (s.words_[i] & above) return true;
        return std::any_of(s.words_.begin() + static_cast<std::ptrdiff_t>(i) + 1, s.words_.end(),
                           [](Word w) { return w != 0; });
      };
      if (a.words_[i] & low) return has_above(b);
      return !has_above(a);
    }
    return false;
  }

  /// Raw word access for the first 64 elements (order <= 64 callers).
  std::uint64_t low_word() const noexcept { return words_.empty() ? 0 : words_[0]; }
  std::size_t hash() const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto w : words_) h = (h ^ w) * 1099511628211ULL;
    return h;
  }

private:
  static std::size_t word_count(std::uint32_t order) { return (order + kWordBits - 1) / kWordBits; }

  GroupSpec group_;
  boost::container::small_vector<Word, 2> words_;
};

inline void require_same_group(const GroupSet& a, const GroupSet& b) {
  if (!(a.group() == b.group())) throw Error("sets live in different groups");
}

/// Closure of S ∪ {0} under addition and negation.
inline GroupSet subgroup_generated(const GroupSet& s) {
  const auto& g = s.group();
  GroupSet h = GroupSet::singleton(g, g.zero());
  // Adding one generator at a time: H <- H + <x> via repeated translation.
  s.for_each([&](Element x) {
    if (h.contains(x)) return;
    GroupSet acc = h;
    Element m = x;
    while (!acc.contains(m)) {
      h.translate_into(m, acc);
      m = g.add(m, x);
    }
    h = std::move(acc);
  });
  return h;
}

inline bool is_subgroup(const GroupSet& h) {
  const auto& g = h.group();
  if (!h.contains(g.zero())) return false;
  const auto elems = h.elements();
  for (auto a : elems)
    for (auto b : elems)
      if (!h.contains(g.add(a, b))) return false;
  return true;
}

/// All subgroups sorted by (cardinality, lexicographic element list).
inline std::vector<GroupSet> enumerate_subgroups(const GroupSpec& g,
                                                 std::uint64_t bound = Limits{}.max_subgroup_order) {
  if (g.order() > bound)
    throw Error("group order " + std::to_string(g.order()) + " exceeds subgroup enumeration bound " +
                std::to_string(bound));
  std::vector<GroupSet> found{GroupSet::singleton(g, g.zero())};
  // Every subgroup is generated by joining cyclic subgroups one at a time,
  // so closing the frontier under "join with <x>" reaches all of them.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::uint32_t x = 0; x < g.order(); ++x) {
      if (found[i].contains(Element{x})) continue;
      GroupSet gens = found[i];
      gens.insert(Element{x});
      GroupSet h = subgroup_generated(gens);
      if (std::find(found.begin(), found.end(), h) == found.end()) found.push_back(std::move(h));
    }
  }
  std::sort(found.begin(), found.end(), [](const GroupSet& a, const GroupSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return lex_less(a, b);
  });
  return found;
}

/// Cosets of subgroup H ordered by least element.
inline std::vector<GroupSet> cosets_of(const GroupSet& h) {
  if (!is_subgroup(h)) throw Error("cosets_of: argument is not a subgroup");
  const auto& g = h.group();
  std::vector<GroupSet> out;
  GroupSet covered(g);
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    if (covered.contains(Element{x})) continue;
    auto q = h.translate(Element{x});
    covered |= q;
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace ksumlab
