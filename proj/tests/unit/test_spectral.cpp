#include <gtest/gtest.h>

#include "generators.hpp"
#include "qplane/errors.hpp"
#include "qplane/spectral.hpp"

using namespace qplane;
using qplane::testing::generic;
using qplane::testing::three_components;

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("1/2"), Rational(1, 2));
  EXPECT_EQ(parse_rational(" -3/6 "), Rational(-1, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("0.52"), Rational(13, 25));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-0.125"), Rational(-1, 8));
}

TEST(Rational, RejectsMalformedInput) {
  for (const char* bad : {"", "abc", "1/0", "1/", "/2", "1.2.3", "0.5e3", "1/2/3"})
    EXPECT_THROW(parse_rational(bad), ModelError) << bad;
}

TEST(Rational, PowersAndSquareRoots) {
  EXPECT_EQ(pow(Rational(1, 2), 3), Rational(1, 8));
  EXPECT_EQ(pow(Rational(2, 3), -2), Rational(9, 4));
  EXPECT_EQ(pow(Rational(5), 0), Rational(1));
  EXPECT_THROW(pow(Rational(0), -1), ModelError);
  Rational root;
  EXPECT_TRUE(exact_sqrt(Rational(49, 100), root));
  EXPECT_EQ(root, Rational(7, 10));
  EXPECT_FALSE(exact_sqrt(Rational(1, 2), root));
  EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
  EXPECT_EQ(to_string(Rational(-4, 2)), "-2");
}

TEST(ScaledRational, ComparesAcrossExponents) {
  const Rational q(1, 2);
  EXPECT_EQ(compare({Rational(1), 1}, {Rational(1, 2), 0}, q), 0);
  EXPECT_EQ(compare({Rational(3), 2}, {Rational(1), 1}, q), 1);  // 3/4 > 1/2
  EXPECT_EQ(compare({Rational(1), 5}, {Rational(1), 4}, q), -1);
  EXPECT_EQ((ScaledRational{Rational(7, 10), 3}.value(q)), Rational(7, 80));
  EXPECT_DOUBLE_EQ((ScaledRational{Rational(7, 10), -2}.to_double(q)), 2.8);
}

TEST(SpectralSet, FullContainsEverythingNonNegative) {
  const auto x = SpectralSet::full(Rational(1, 2));
  EXPECT_TRUE(x.is_full());
  EXPECT_TRUE(x.contains(Rational(0)));
  EXPECT_TRUE(x.contains(Rational(1000)));
  EXPECT_THROW(x.contains(Rational(-1)), ModelError);
  EXPECT_THROW(gap_structure(x), ModelError);
}

TEST(SpectralSet, GenericMembershipFollowsTheOrbit) {
  const auto x = three_components();
  EXPECT_TRUE(x->contains(Rational(0)));
  EXPECT_TRUE(x->contains(Rational(13, 25)));
  EXPECT_TRUE(x->contains(Rational(13, 50)));   // q * 13/25
  EXPECT_TRUE(x->contains(Rational(26, 25)));   // q^-1 * 13/25
  EXPECT_TRUE(x->contains(ScaledRational{Rational(7, 10), 40}));
  EXPECT_FALSE(x->contains(Rational(1)));
  EXPECT_FALSE(x->contains(Rational(1, 2)));
  EXPECT_FALSE(x->contains(Rational(3, 5) * Rational(99, 100)));
  EXPECT_TRUE(x->admits_base_point(Rational(61, 100)));
  EXPECT_FALSE(x->admits_base_point(Rational(61, 200)));
}

TEST(SpectralSet, RejectsBadInput) {
  const Rational q(1, 2);
  EXPECT_THROW(SpectralSet::generic(q, {}), ModelError);
  EXPECT_THROW(SpectralSet::generic(Rational(1), {{Rational(3, 5), Rational(7, 10)}}), ModelError);
  EXPECT_THROW(SpectralSet::generic(Rational(0), {{Rational(3, 5), Rational(7, 10)}}), ModelError);
  EXPECT_THROW(SpectralSet::generic(q, {{Rational(7, 10), Rational(3, 5)}}), ModelError);
  EXPECT_THROW(SpectralSet::generic(q, {{Rational(1, 2), Rational(3, 5)}}), ModelError);
  EXPECT_THROW(SpectralSet::generic(q, {{Rational(3, 5), Rational(1)}}), ModelError);
  EXPECT_THROW(SpectralSet::full(Rational(3, 2)), ModelError);
}

TEST(SpectralSet, MergesOverlappingAndTouchingIntervals) {
  const auto x = generic("1/2", {{"0.7", "0.8"}, {"0.55", "0.6"}, {"0.6", "0.65"}, {"0.75", "0.9"}});
  ASSERT_EQ(x->components().size(), 2u);
  EXPECT_EQ(x->components()[0], (ClosedInterval{Rational(11, 20), Rational(13, 20)}));
  EXPECT_EQ(x->components()[1], (ClosedInterval{Rational(7, 10), Rational(9, 10)}));
}

// Hand-computed gap structure of Y = [13/25,11/20] u [3/5,31/50] u [7/10,18/25].
TEST(GapStructure, ThreeComponentStructureFrozen) {
  const auto g = gap_structure(*three_components());
  EXPECT_EQ(g.s, Rational(18, 25));
  ASSERT_EQ(g.components.size(), 3u);
  ASSERT_EQ(g.gaps.size(), 3u);
  EXPECT_EQ(g.components[0].witness, Rational(71, 100));
  EXPECT_EQ(g.components[1].witness, Rational(61, 100));
  EXPECT_EQ(g.components[2].witness, Rational(107, 200));
  EXPECT_EQ(g.gaps[0].lo, Rational(31, 50));
  EXPECT_EQ(g.gaps[0].hi, Rational(7, 10));
  EXPECT_EQ(g.gaps[0].sample, Rational(33, 50));
  EXPECT_EQ(g.gaps[1].sample, Rational(23, 40));
  EXPECT_EQ(g.gaps[2].lo, Rational(1, 2));
  EXPECT_EQ(g.gaps[2].sample, Rational(51, 100));
  EXPECT_EQ(g.lowest_gap(), 2u);
}

TEST(GapStructure, DegenerateComponentUsesItsPoint) {
  const auto g = gap_structure(*generic("1/3", {{"1/2", "1/2"}}));
  EXPECT_EQ(g.components[0].witness, Rational(1, 2));
  EXPECT_EQ(g.gaps[0].sample, Rational(5, 12));
}

TEST(GapStructure, SamplesAvoidTheSpectrumAndWitnessesLieInIt) {
  qplane::testing::Rng rng(7);
  for (int n = 1; n <= 6; ++n) {
    const auto x = SpectralSet::generic(Rational(1, 2), qplane::testing::random_components(rng, Rational(1, 2), n));
    const auto g = gap_structure(x);
    ASSERT_EQ(g.components.size(), static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < g.gaps.size(); ++i) {
      EXPECT_FALSE(x.contains(g.gaps[i].sample));
      EXPECT_TRUE(x.contains(g.components[i].witness));
      EXPECT_GT(g.components[i].witness, g.gaps[i].sample);
      if (i + 1 < g.gaps.size()) EXPECT_GT(g.gaps[i].sample, g.components[i + 1].witness);
    }
  }
}
