#pragma once

// Text forms of elements, sets and sequences.
//   element:  "3" (cyclic) or "(1,2)" (products; "(3)" also accepted)
//   set:      "0,1,2"  or "(0,1),(1,2)"; "{}" is the empty set
//   sequence: set literal with optional "^m" suffixes, e.g. "0^2,1"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ksumlab/group.hpp"
#include "ksumlab/sumset.hpp"

namespace ksumlab {

namespace detail {

/// Splits on commas that are not inside parentheses.
inline std::vector<std::string_view> split_top_level(std::string_view s) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == ',' && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw Error("unbalanced parentheses in '" + std::string(s) + "'");
  out.push_back(trim(s.substr(start)));
  return out;
}

inline std::uint32_t parse_coord(std::string_view tok) {
  tok = trim(tok);
  if (tok.empty()) throw Error("empty coordinate");
  std::uint64_t v = 0;
  for (char c : tok) {
    if (c < '0' || c > '9') throw Error("bad token '" + std::string(tok) + "'");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
    if (v > 0xffffffffULL) throw Error("coordinate too large: '" + std::string(tok) + "'");
  }
  return static_cast<std::uint32_t>(v);
}

inline std::string_view strip_braces(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '{' && s.back() == '}') s = trim(s.substr(1, s.size() - 2));
  return s;
}

}  // namespace detail

inline Element parse_element(const GroupSpec& g, std::string_view text) {
  auto t = detail::trim(text);
  std::vector<std::uint32_t> coords;
  if (!t.empty() && t.front() == '(') {
    if (t.back() != ')') throw Error("bad token '" + std::string(t) + "'");
    auto inner = t.substr(1, t.size() - 2);
    std::size_t pos = 0;
    while (true) {
      auto next = inner.find(',', pos);
      coords.push_back(detail::parse_coord(inner.substr(pos, next == inner.npos ? inner.npos : next - pos)));
      if (next == inner.npos) break;
      pos = next + 1;
    }
  } else {
    coords.push_back(detail::parse_coord(t));
  }
  if (coords.size() != g.rank())
    throw Error("bad token '" + std::string(t) + "': expected " + std::to_string(g.rank()) +
                " coordinate(s) for " + g.str());
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] >= g.factors()[i])
      throw Error("bad token '" + std::string(t) + "': coordinate out of range for " + g.str());
  return g.encode(coords);
}

inline GroupSet parse_set(const GroupSpec& g, std::string_view text) {
  GroupSet out(g);
  const auto body = detail::strip_braces(text);
  if (body.empty()) return out;
  for (auto tok : detail::split_top_level(body)) out.insert(parse_element(g, tok));
  return out;
}

inline GSequence parse_sequence(const GroupSpec& g, std::string_view text) {
  GSequence out(g);
  const auto body = detail::strip_braces(text);
  if (body.empty()) throw Error("empty sequence literal");
  for (auto tok : detail::split_top_level(body)) {
    std::uint32_t mult = 1;
    const auto caret = tok.rfind('^');
    if (caret != std::string_view::npos) {
      mult = detail::parse_coord(tok.substr(caret + 1));
      if (mult == 0) throw Error("bad token '" + std::string(tok) + "': multiplicity must be >= 1");
      tok = tok.substr(0, caret);
    }
    out.add(parse_element(g, tok), mult);
  }
  return out;
}

/// Sorted comma-separated elements; "{}" when empty.
inline std::string to_literal(const GroupSet& s) {
  if (s.empty()) return "{}";
  std::string out;
  s.for_each([&](Element e) {
    if (!out.empty()) out += ',';
    out += s.group().element_str(e);
  });
  return out;
}

inline std::string to_literal(const GSequence& s) {
  std::string out;
  for (auto [e, m] : s.multiplicities()) {
    if (!out.empty()) out += ',';
    out += s.group().element_str(e);
    if (m > 1) out += '^' + std::to_string(m);
  }
  return out;
}

}  // namespace ksumlab
