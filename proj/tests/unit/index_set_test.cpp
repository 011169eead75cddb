#include <gtest/gtest.h>

#include <random>
#include <unordered_set>

#include "expect_error.hpp"
#include "ltax/index_set.hpp"
#include "oracle.hpp"

using ltax::AttributeSet;
using ltax::ErrorCode;

TEST(IndexSet, BasicMembership) {
  AttributeSet s(70, {0, 3, 64, 69});
  EXPECT_EQ(s.size(), 4u);
  EXPECT_TRUE(s.contains(64));
  EXPECT_FALSE(s.contains(65));
  EXPECT_FALSE(s.contains(500));
  EXPECT_EQ(s.first(), 0u);
  EXPECT_EQ(s.next(4), 64u);
  EXPECT_EQ(s.next(70), 70u);
  EXPECT_EQ(s.indices(), (std::vector<std::size_t>{0, 3, 64, 69}));
  s.erase(0);
  EXPECT_EQ(s.first(), 3u);
  EXPECT_EQ(s.to_string(), "{3,64,69}");
}

TEST(IndexSet, FullAndComplementRespectUniverse) {
  auto full = AttributeSet::full(67);
  EXPECT_EQ(full.size(), 67u);
  EXPECT_TRUE(full.complement().empty());
  EXPECT_TRUE(AttributeSet(0).is_full());
  EXPECT_EQ(AttributeSet::from_mask(3, 0xff).size(), 3u);
}

TEST(IndexSet, OutOfRangeAndMismatch) {
  AttributeSet s(5);
  EXPECT_LTAX_ERROR(s.insert(5), ErrorCode::index_out_of_range);
  EXPECT_LTAX_ERROR(s.erase(9), ErrorCode::index_out_of_range);
  EXPECT_LTAX_ERROR((void)(s | AttributeSet(6)), ErrorCode::universe_mismatch);
  EXPECT_LTAX_ERROR((void)s.is_subset_of(AttributeSet(4)), ErrorCode::universe_mismatch);
}

TEST(IndexSet, Prefix) {
  auto s = AttributeSet::full(130);
  EXPECT_EQ(s.prefix(0).size(), 0u);
  EXPECT_EQ(s.prefix(65).size(), 65u);
  EXPECT_EQ(s.prefix(128).size(), 128u);
  EXPECT_EQ(s.prefix(1000).size(), 130u);
}

TEST(IndexSet, LecticOrderMatchesOracle) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 2000; ++round) {
    const std::size_t n = 1 + rng() % 90;
    auto a = ltax::oracle::random_subset<AttributeSet>(rng, n);
    auto b = ltax::oracle::random_subset<AttributeSet>(rng, n);
    ASSERT_EQ(lectic_less(a, b),
              ltax::oracle::lectic_less(ltax::oracle::to_bits(a), ltax::oracle::to_bits(b)));
    ASSERT_FALSE(lectic_less(a, a));
  }
}

TEST(IndexSet, LecticSmallCases) {
  // Position 0 is the most significant.
  EXPECT_TRUE(lectic_less(AttributeSet(3, {1, 2}), AttributeSet(3, {0})));
  EXPECT_TRUE(lectic_less(AttributeSet(3), AttributeSet(3, {2})));
  EXPECT_FALSE(lectic_less(AttributeSet(3, {0}), AttributeSet(3, {0})));
}

TEST(IndexSet, SetAlgebraMatchesOracle) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 500; ++round) {
    const std::size_t n = rng() % 150;
    auto a = ltax::oracle::random_subset<AttributeSet>(rng, n);
    auto b = ltax::oracle::random_subset<AttributeSet>(rng, n);
    auto ab = ltax::oracle::to_bits(a), bb = ltax::oracle::to_bits(b);
    ltax::oracle::Bits inter(n), uni(n), diff(n);
    std::size_t common = 0;
    for (std::size_t i = 0; i < n; ++i) {
      inter[i] = ab[i] && bb[i];
      uni[i] = ab[i] || bb[i];
      diff[i] = ab[i] && !bb[i];
      common += inter[i];
    }
    ASSERT_EQ(ltax::oracle::to_bits(a & b), inter);
    ASSERT_EQ(ltax::oracle::to_bits(a | b), uni);
    ASSERT_EQ(ltax::oracle::to_bits(a - b), diff);
    ASSERT_EQ(a.intersection_size(b), common);
    ASSERT_EQ(a.intersects(b), common > 0);
    ASSERT_EQ(a.is_subset_of(b), ltax::oracle::subset(ab, bb));
  }
}

TEST(IndexSet, HashDistinguishesUniverse) {
  std::unordered_set<AttributeSet, ltax::IndexSetHash<ltax::AttributeTag>> seen;
  seen.insert(AttributeSet(3));
  seen.insert(AttributeSet(4));
  seen.insert(AttributeSet(3));
  EXPECT_EQ(seen.size(), 2u);
}

TEST(IndexSet, Retag) {
  AttributeSet a(4, {1, 3});
  auto o = a.retag<ltax::ObjectTag>();
  EXPECT_EQ(o.universe(), 4u);
  EXPECT_EQ(o.indices(), a.indices());
}
