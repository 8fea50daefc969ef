#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ksumlab/group.hpp"

namespace ksumlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// C(n, k) with saturation-free 64-bit arithmetic; valid while the result fits.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r / i * (n - k + i) + r % i * (n - k + i) / i;
  return r;
}

inline BigInt big_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

/// "p/q" in lowest terms, integers included ("1/1").
inline std::string rational_str(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

/// Advance `c` (strictly increasing, values in [0, n)) to the next
/// k-combination in lexicographic order. Returns false after the last one.
inline bool next_combination(std::span<std::uint32_t> c, std::uint32_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

/// The k-combination of [0, n) with the given lexicographic rank.
inline std::vector<std::uint32_t> unrank_combination(std::uint64_t rank, std::uint32_t n,
                                                     std::uint32_t k) {
  std::vector<std::uint32_t> c;
  c.reserve(k);
  std::uint32_t x = 0;
  for (std::uint32_t i = 0; i < k; ++i) {
    while (true) {
      // Combinations starting with x at this slot.
      const auto cnt = binomial(n - x - 1, k - i - 1);
      if (rank < cnt) break;
      rank -= cnt;
      ++x;
    }
    c.push_back(x++);
  }
  return c;
}

inline std::vector<std::uint32_t> first_combination(std::uint32_t k) {
  std::vector<std::uint32_t> c(k);
  for (std::uint32_t i = 0; i < k; ++i) c[i] = i;
  return c;
}

}  // namespace ksumlab
