#include "dlab/measure.hpp"

#include <gtest/gtest.h>

#include <random>

#include "dlab/error.hpp"
#include "oracles.hpp"

namespace dlab {
namespace {

std::vector<double> values(const L1Fun& f) { return {f.values().begin(), f.values().end()}; }

TEST(MeasureTest, MassExamples) {
  const auto u4 = MeasureSpace::uniform(4);
  EXPECT_DOUBLE_EQ(mass(u4, AtomSet::of(4, {0, 1})), 0.5);
  EXPECT_EQ(mass(u4, AtomSet(4)), 0.0);
  const MeasureSpace w({0.2, 0.3, 0.5});
  EXPECT_NEAR(mass(w, AtomSet::of(3, {1, 2})), 0.8, kTightTol);
}

TEST(MeasureTest, MassRejectsForeignSet) {
  EXPECT_THROW(mass(MeasureSpace::uniform(4), AtomSet(5)), Error);
  EXPECT_THROW(AtomSet::of(4, {4}), Error);
}

TEST(MeasureTest, SpaceRejectsBadWeights) {
  EXPECT_THROW(MeasureSpace({}), Error);
  EXPECT_THROW(MeasureSpace({0.5, 0.0}), Error);
  EXPECT_THROW(MeasureSpace({0.5, -1.0}), Error);
  EXPECT_THROW(MeasureSpace({0.5, std::numeric_limits<double>::infinity()}), Error);
}

TEST(MeasureTest, Norm1Examples) {
  const auto u4 = MeasureSpace::uniform(4);
  EXPECT_DOUBLE_EQ(norm1(L1Fun(u4, {1, 1, 1, 1})), 1.0);
  EXPECT_EQ(norm1(L1Fun::zero(u4)), 0.0);
  EXPECT_DOUBLE_EQ(norm1(L1Fun(u4, {0, 0, 2, 2})), 1.0);
}

TEST(MeasureTest, NormalizedIndicatorExamples) {
  EXPECT_EQ(values(normalized_indicator(MeasureSpace::uniform(4), AtomSet::of(4, {0, 1}))),
            (std::vector<double>{2, 2, 0, 0}));
  EXPECT_EQ(values(normalized_indicator(MeasureSpace::uniform(2), AtomSet::full(2))), (std::vector<double>{1, 1}));
  const auto f = normalized_indicator(MeasureSpace({0.2, 0.8}), AtomSet::of(2, {1}));
  EXPECT_EQ(f[0], 0.0);
  EXPECT_NEAR(f[1], 1.25, kTightTol);
}

TEST(MeasureTest, NormalizedIndicatorOfEmptySetIsEmptySetError) {
  try {
    normalized_indicator(MeasureSpace::uniform(3), AtomSet(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::empty_set);
  }
}

TEST(MeasureTest, MaskExamples) {
  const auto u4 = MeasureSpace::uniform(4);
  const L1Fun f(u4, {1, 2, 3, 4});
  EXPECT_EQ(values(mask(f, AtomSet::of(4, {2, 3}))), (std::vector<double>{0, 0, 3, 4}));
  EXPECT_EQ(values(mask(f, AtomSet::full(4))), values(f));
  EXPECT_EQ(values(mask(f, AtomSet(4))), (std::vector<double>(4, 0.0)));
}

TEST(MeasureTest, RefineExamples) {
  const auto r = refine(MeasureSpace::uniform(2), 2);
  ASSERT_EQ(r.space.size(), 4u);
  for (double w : r.space.weights()) EXPECT_DOUBLE_EQ(w, 0.25);
  EXPECT_EQ(r.parent, (std::vector<std::size_t>{0, 0, 1, 1}));

  const MeasureSpace base({0.3, 0.7});
  EXPECT_TRUE(refine(base, 1).space == base);

  const auto r3 = refine(MeasureSpace({0.4, 0.6}), 3);
  ASSERT_EQ(r3.space.size(), 6u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(r3.space.weight(i), 0.4 / 3, kTightTol);
  for (std::size_t i = 3; i < 6; ++i) EXPECT_NEAR(r3.space.weight(i), 0.2, kTightTol);

  EXPECT_THROW(refine(base, 0), Error);
}

TEST(AtomSetTest, HexRoundTripAndOrder) {
  EXPECT_EQ(AtomSet::from_hex(8, "0x0F"), AtomSet::of(8, {0, 1, 2, 3}));
  EXPECT_EQ(AtomSet::of(8, {0}).to_hex(), "0x01");
  EXPECT_EQ(AtomSet::of(4, {0, 3}).to_hex(), "0x09");
  EXPECT_EQ(AtomSet::of(70, {0, 69}).to_hex(), "0x200000000000000001");
  EXPECT_EQ(AtomSet::from_hex(70, AtomSet::of(70, {0, 5, 64, 69}).to_hex()), AtomSet::of(70, {0, 5, 64, 69}));
  EXPECT_THROW(AtomSet::from_hex(4, "0x10"), Error);
  EXPECT_THROW(AtomSet::from_hex(4, "0xZ"), Error);

  EXPECT_LT(AtomSet::of(4, {0}), AtomSet::of(4, {1}));
  EXPECT_LT(AtomSet::of(4, {1}), AtomSet::of(4, {0, 1}));
  EXPECT_LT(AtomSet::of(4, {0, 1}), AtomSet::of(4, {2}));
  EXPECT_LT(AtomSet::of(100, {0, 1, 2}), AtomSet::of(100, {70}));
}

TEST(AtomSetTest, FullAndComplement) {
  for (std::size_t n : {1u, 63u, 64u, 65u, 130u}) {
    const auto full = AtomSet::full(n);
    EXPECT_EQ(full.count(), n);
    EXPECT_TRUE(full.complement().empty());
    const auto s = AtomSet::of(n, {0, n - 1});
    EXPECT_EQ((s | s.complement()), full);
    EXPECT_TRUE((s & s.complement()).empty());
  }
}

// Properties over random spaces and sets.
TEST(MeasurePropertyTest, AdditivityIndicatorNormAndMaskSplit) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    const auto space = testing::random_space(rng, n);
    AtomSet b1(n), b2(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      switch (rng() % 3) {
        case 0: b1.insert(i); break;
        case 1: b2.insert(i); break;
        default: break;
      }
      if (rng() % 2) b.insert(i);
    }
    EXPECT_NEAR(mass(space, b1 | b2), mass(space, b1) + mass(space, b2), kTightTol);
    if (!b.empty()) EXPECT_NEAR(norm1(normalized_indicator(space, b)), 1.0, kTightTol);
    const auto f = testing::random_fun(rng, space);
    EXPECT_NEAR(norm1(mask(f, b)) + norm1(mask(f, b.complement())), norm1(f), kTightTol);
  }
}

TEST(MeasurePropertyTest, RefinePreservesMassAndNorm) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto space = testing::random_space(rng, 1 + rng() % 12);
    const std::size_t k = 1 + rng() % 6;
    const auto r = refine(space, k);
    EXPECT_NEAR(r.space.total_mass(), space.total_mass(), kTightTol);
    const auto f = testing::random_fun(rng, space);
    EXPECT_NEAR(norm1(r.push_forward(f)), norm1(f), kTightTol);
    const auto b = AtomSet::of(space.size(), {0});
    EXPECT_NEAR(mass(r.space, r.push_forward(b)), mass(space, b), kTightTol);
  }
}

}  // namespace
}  // namespace dlab
