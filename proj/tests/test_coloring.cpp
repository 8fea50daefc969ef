#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "ksumlab/coloring.hpp"
#include "ksumlab/literal.hpp"
#include "support/oracles.hpp"

using namespace ksumlab;
using ksumlab::testing::enumerated_pair_cover;
using ksumlab::testing::groups_of_order;
using ksumlab::testing::random_subset;

namespace {

// Greedy proper colouring over a shuffled edge order.
Coloring random_proper(std::uint32_t n, std::mt19937_64& rng) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  std::shuffle(edges.begin(), edges.end(), rng);
  Coloring c(n);
  for (auto [u, v] : edges) {
    std::int64_t col = 0;
    const auto clash = [&](std::int64_t x) {
      for (std::uint32_t w = 0; w < n; ++w)
        if ((w != u && c.at(u, w) == x) || (w != v && c.at(v, w) == x)) return true;
      return false;
    };
    while (clash(col)) ++col;
    c.set(u, v, col);
  }
  return c;
}

Coloring parse(const std::string& text) {
  std::istringstream in(text);
  return read_coloring(in);
}

}  // namespace

TEST(Coloring, InducedExamples) {
  const auto v4 = induced_coloring(GroupSet::whole(GroupSpec({2, 2})));
  EXPECT_EQ(v4.n(), 4U);
  EXPECT_EQ(v4.palette_size(), 3U);
  EXPECT_TRUE(all_classes_perfect_matchings(v4));
  EXPECT_EQ(induced_coloring(GroupSet(GroupSpec({5}), {0, 1, 2, 3})).palette_size(), 5U);
  EXPECT_EQ(induced_coloring(GroupSet(GroupSpec({5}), {1, 3})).palette_size(), 1U);
  EXPECT_THROW(induced_coloring(GroupSet(GroupSpec({5}), {1})), Error);
}

TEST(Coloring, PaletteSizeIsTwoSumSize) {
  std::mt19937_64 rng(41);
  for (const auto& g : groups_of_order(4, 16)) {
    const auto a = random_subset(g, 2 + rng() % (g.order() - 1), rng);
    const auto c = induced_coloring(a);
    EXPECT_TRUE(validate_proper(c));
    EXPECT_EQ(c.palette_size(), ksum_set(a, 2).size());
  }
}

TEST(Coloring, ValidateProper) {
  Coloring k3(3);
  k3.set(0, 1, 0);
  k3.set(0, 2, 0);
  k3.set(1, 2, 0);
  EXPECT_FALSE(validate_proper(k3));
  Coloring k2(2);
  k2.set(0, 1, 9);
  EXPECT_TRUE(validate_proper(k2));
  EXPECT_THROW(validate_proper(Coloring(3)), Error);
  EXPECT_THROW(k2.set(1, 1, 0), Error);
}

TEST(Coloring, ColoursOn) {
  const auto c = induced_coloring(GroupSet::whole(GroupSpec({2, 2})));
  EXPECT_EQ(colours_on(c, {}), 0U);
  EXPECT_EQ(colours_on(c, {2}), 0U);
  EXPECT_EQ(colours_on(c, {0, 1, 2, 3}), c.palette_size());
  for (std::uint32_t drop = 0; drop < 4; ++drop) {
    std::vector<std::uint32_t> u;
    for (std::uint32_t v = 0; v < 4; ++v)
      if (v != drop) u.push_back(v);
    EXPECT_EQ(colours_on(c, u), 3U);
  }
}

TEST(Coloring, RoundRobinIsAOneFactorization) {
  for (std::uint32_t n = 4; n <= 16; n += 2) {
    const auto c = round_robin_coloring(n);
    EXPECT_TRUE(validate_proper(c));
    EXPECT_EQ(c.palette_size(), n - 1);
    EXPECT_TRUE(all_classes_perfect_matchings(c));
  }
  EXPECT_THROW(round_robin_coloring(7), Error);
}

TEST(RichSubset, Examples) {
  const auto c = induced_coloring(GroupSet(GroupSpec({7}), {0, 1, 2, 3, 4}));
  const auto r = find_rich_subset(c);
  EXPECT_EQ(r.vertices.size(), 4U);
  EXPECT_GE(r.colours, 5U);
  EXPECT_GE(colours_on(c, r.vertices), 5U);
  EXPECT_THROW(find_rich_subset(round_robin_coloring(6)), Error);
}

TEST(RichSubset, ExhaustiveResultIsLeastQualifyingSubset) {
  std::mt19937_64 rng(43);
  for (std::uint32_t n = 5; n <= 9; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto c = random_proper(n, rng);
      if (c.palette_size() < n) continue;
      const auto r = find_rich_subset(c);
      const std::uint32_t s = (n + 3) / 2;
      auto u = first_combination(s);
      do {
        if (colours_on(c, u) >= n) break;
      } while (next_combination(u, n));
      EXPECT_EQ(r.vertices, u);
      EXPECT_TRUE(r.exhaustive);
    }
  }
}

TEST(RichSubset, SampledPathIsSeededAndValid) {
  std::mt19937_64 rng(47);
  const auto c = random_proper(24, rng);
  ASSERT_GE(c.palette_size(), 24U);
  SubsetSearchOptions opt;
  opt.seed = 5;
  const auto a = find_rich_subset(c, opt);
  const auto b = find_rich_subset(c, opt);
  EXPECT_FALSE(a.exhaustive);
  EXPECT_EQ(a.vertices, b.vertices);
  EXPECT_EQ(a.vertices.size(), 13U);
  EXPECT_GE(colours_on(c, a.vertices), 24U);
}

TEST(MatchingSubset, Examples) {
  const auto c8 = induced_coloring(GroupSet::whole(GroupSpec({2, 2, 2})));
  const auto u = find_matching_subset(c8);
  EXPECT_EQ(u, (std::vector<std::uint32_t>{0, 1, 2, 3, 4}));
  EXPECT_EQ(colours_on(c8, u), 7U);
  const auto rr = round_robin_coloring(6);
  EXPECT_EQ(find_matching_subset(rr), (std::vector<std::uint32_t>{0, 1, 2, 3}));
  EXPECT_EQ(colours_on(rr, {0, 1, 2, 3}), 5U);
  EXPECT_THROW(find_matching_subset(induced_coloring(GroupSet::whole(GroupSpec({7})))), Error);
}

TEST(PairCover, Examples) {
  for (std::uint64_t n = 6; n <= 30; n += 2) EXPECT_EQ(exact_pair_cover_probability(n / 2, n).value, 1);
  EXPECT_EQ(exact_pair_cover_probability(2, 5).value, 1);
  EXPECT_GT(exact_pair_cover_probability(1, 5).value, Rational(2, 5));
  EXPECT_EQ(rational_str(exact_pair_cover_probability(3, 6).value), "1/1");
  EXPECT_THROW(exact_pair_cover_probability(0, 6), Error);
  EXPECT_THROW(exact_pair_cover_probability(4, 6), Error);
  EXPECT_THROW(exact_pair_cover_probability(1, 4), Error);
}

TEST(PairCover, ClosedFormMatchesEnumeration) {
  for (std::uint32_t n = 5; n <= 16; ++n)
    for (std::uint32_t a = 1; 2 * a <= n; ++a)
      EXPECT_EQ(exact_pair_cover_probability(a, n).value, enumerated_pair_cover(a, n)) << a << "," << n;
}

TEST(PairCover, BoundedBelowByTwoAOverN) {
  for (std::uint64_t n = 5; n <= 30; ++n)
    for (std::uint64_t a = 1; 2 * a <= n; ++a) {
      const auto p = exact_pair_cover_probability(a, n).value;
      const Rational bound(2 * a, n);
      EXPECT_GE(p, bound);
      EXPECT_LE(p, 1);
      EXPECT_EQ(p == bound, 2 * a == n) << a << "," << n;
    }
}

TEST(TwoSumSubset, Examples) {
  const auto e8 = find_2sum_rich_subset(GroupSet::whole(GroupSpec({2, 2, 2})));
  EXPECT_FALSE(e8.rich_case);
  EXPECT_EQ(e8.subset.size(), 5U);
  EXPECT_EQ(ksum_set(e8.subset, 2).size(), 7U);
  const auto z11 = find_2sum_rich_subset(GroupSet(GroupSpec({11}), {0, 1, 2, 3, 4}));
  EXPECT_TRUE(z11.rich_case);
  EXPECT_EQ(z11.subset.size(), 4U);
  EXPECT_GE(ksum_set(z11.subset, 2).size(), 5U);
  EXPECT_THROW(find_2sum_rich_subset(GroupSet(GroupSpec({11}), {0, 1, 2, 3})), Error);
}

TEST(ColoringFile, RoundTrip) {
  const auto c = round_robin_coloring(8);
  std::ostringstream out;
  write_coloring(out, c);
  const auto back = parse(out.str());
  for (std::uint32_t u = 0; u < 8; ++u)
    for (std::uint32_t v = u + 1; v < 8; ++v) EXPECT_EQ(back.at(u, v), c.at(u, v));
}

TEST(ColoringFile, RejectsBadInput) {
  EXPECT_THROW(parse("n 3\n0 1 0\n0 1 1\n1 2 2\n"), Error);  // duplicate
  EXPECT_THROW(parse("n 3\n0 1 0\n1 0 1\n1 2 2\n"), Error);  // duplicate, reversed
  EXPECT_THROW(parse("n 3\n0 0 0\n0 1 1\n1 2 2\n"), Error);  // self-loop
  EXPECT_THROW(parse("n 3\n0 1 0\n1 2 2\n"), Error);         // missing edge
  EXPECT_THROW(parse("0 1 0\n"), Error);                     // no header
  EXPECT_THROW(parse("n 3\n0 1 0\n0 2 1\n1 5 2\n"), Error);  // vertex range
  EXPECT_THROW(parse("n 3\n0 1 0 7\n0 2 1\n1 2 2\n"), Error);
  EXPECT_NO_THROW(parse("n 3\n\n0 1 0\n0 2 1\n1 2 2\n"));
}
