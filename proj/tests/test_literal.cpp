#include <gtest/gtest.h>

#include <random>

#include "ksumlab/literal.hpp"
#include "support/oracles.hpp"

using namespace ksumlab;
using ksumlab::testing::groups_of_order;
using ksumlab::testing::random_subset;

namespace {

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Literal, ParsesCyclicAndProductElements) {
  const GroupSpec z5({5});
  EXPECT_EQ(parse_set(z5, "0,1,2,3"), GroupSet(z5, {0, 1, 2, 3}));
  EXPECT_EQ(parse_set(z5, "{ 4 , 1 }"), GroupSet(z5, {1, 4}));
  EXPECT_EQ(parse_set(z5, "(3)"), GroupSet(z5, {3}));
  EXPECT_TRUE(parse_set(z5, "{}").empty());
  const GroupSpec g({2, 3});
  EXPECT_EQ(parse_element(g, "(1,2)"), g.encode({1, 2}));
  EXPECT_EQ(parse_set(g, "(0,1),(1,2)").size(), 2U);
}

TEST(Literal, SequenceMultiplicities) {
  const GroupSpec z7({7});
  const auto s = parse_sequence(z7, "0^2,1,1,2^3");
  EXPECT_EQ(s.length(), 7U);
  EXPECT_EQ(s.multiplicities().at(Element{1}), 2U);
  EXPECT_EQ(to_literal(s), "0^2,1^2,2^3");
  const GroupSpec g({2, 2});
  EXPECT_EQ(parse_sequence(g, "(1,1)^4").length(), 4U);
}

TEST(Literal, ErrorsNameTheOffendingToken) {
  const GroupSpec z5({5});
  EXPECT_NE(error_of([&] { parse_set(z5, "0,1,x7"); }).find("x7"), std::string::npos);
  EXPECT_NE(error_of([&] { parse_set(z5, "0,9"); }).find("'9'"), std::string::npos);
  const GroupSpec g({2, 3});
  EXPECT_NE(error_of([&] { parse_set(g, "(0,1),(1,5)"); }).find("(1,5)"), std::string::npos);
  EXPECT_NE(error_of([&] { parse_set(g, "(0,1),1"); }).find("'1'"), std::string::npos);
  EXPECT_NE(error_of([&] { parse_sequence(z5, "1^0"); }).find("1^0"), std::string::npos);
  EXPECT_THROW(parse_set(g, "(0,1"), Error);
  EXPECT_THROW(parse_sequence(z5, "{}"), Error);
}

TEST(Literal, SetRoundTrip) {
  std::mt19937_64 rng(31);
  for (const auto& g : groups_of_order(2, 24)) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_subset(g, rng() % (g.order() + 1), rng);
      const auto text = to_literal(a);
      EXPECT_EQ(parse_set(g, text), a) << text;
      if (!a.empty()) {
        EXPECT_EQ(parse_set(g, "{" + text + "}"), a) << text;
      }
    }
  }
}

TEST(Literal, SequenceRoundTrip) {
  std::mt19937_64 rng(37);
  for (const auto& g : groups_of_order(2, 16)) {
    for (int trial = 0; trial < 10; ++trial) {
      GSequence s(g);
      const auto len = 1 + rng() % 9;
      for (std::size_t i = 0; i < len; ++i) s.add(Element{static_cast<std::uint32_t>(rng() % g.order())});
      EXPECT_EQ(parse_sequence(g, to_literal(s)), s) << to_literal(s);
    }
  }
}
