#include <gtest/gtest.h>

#include "generators.hpp"
#include "qplane/errors.hpp"
#include "qplane/ktheory.hpp"

using namespace qplane;
using qplane::testing::full;
using qplane::testing::generic;
using qplane::testing::Rng;
using qplane::testing::three_components;

namespace {

std::shared_ptr<const SpectralSet> random_generic(Rng& rng, int n) {
  const Rational q(1, 2);
  return std::make_shared<const SpectralSet>(SpectralSet::generic(q, qplane::testing::random_components(rng, q, n)));
}

KClassVector generic_vector(long l, std::vector<long> n, long m) {
  KClassVector v;
  v.basis = SpectrumKind::Generic;
  v.l = l;
  v.n = std::move(n);
  v.m = m;
  return v;
}

}  // namespace

TEST(KGroups, FullRanks) {
  const auto x = full("1/2");
  const auto nu = kgroups(*x, false);
  const auto u = kgroups(*x, true);
  EXPECT_EQ(nu.k0_rank, 1);
  EXPECT_EQ(u.k0_rank, 2);
  EXPECT_TRUE(nu.k1_trivial);
  EXPECT_EQ(u.summary(), "K0 = Z^2 (unital), K1 = 0");
  ASSERT_EQ(u.generators.size(), 2u);
  EXPECT_EQ(u.generators[0].name, "R_1");
  EXPECT_EQ(u.generators[1].name, "1");
}

TEST(KGroups, GenericRanksFollowComponentCount) {
  Rng rng(11);
  for (int n : {1, 2, 3, 6}) {
    const auto x = random_generic(rng, n);
    EXPECT_EQ(kgroups(*x, false).k0_rank, n + 1);
    EXPECT_EQ(kgroups(*x, true).k0_rank, n + 2);
    EXPECT_TRUE(kgroups(*x, true).k1_trivial);
    EXPECT_EQ(kgroups(*x, false).generators.size(), static_cast<std::size_t>(n + 1));
  }
  const auto two = generic("1/2", {{"0.6", "0.62"}, {"0.7", "0.72"}});
  EXPECT_EQ(kgroups(*two, false).summary(), "K0 = Z^3 (non-unital), K1 = 0");
  EXPECT_EQ(kgroups(*three_components(), false).generators.front().name, "χ_[0,q)");
}

TEST(RankDecompose, Examples) {
  const auto g2 = gap_structure(*generic("1/2", {{"0.6", "0.62"}, {"0.7", "0.72"}}));
  EXPECT_EQ(rank_decompose({{2, 3}}, g2), (std::vector<long>{2, 1}));
  EXPECT_EQ(rank_decompose({{1, 0}}, g2), (std::vector<long>{1, -1}));
  EXPECT_EQ(rank_decompose({{4, 4}}, g2), (std::vector<long>{4, 0}));
  EXPECT_THROW(rank_decompose({{1}}, g2), ModelError);
  EXPECT_THROW(rank_decompose({{1, -1}}, g2), ModelError);
}

TEST(RankDecompose, RoundTripsOnRandomRankFunctions) {
  Rng rng(5);
  std::uniform_int_distribution<int> comps(1, 6);
  std::uniform_int_distribution<int> rank(0, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = comps(rng);
    const auto g = gap_structure(*random_generic(rng, n));
    RankFunction r;
    for (int i = 0; i < n; ++i) r.ranks.push_back(rank(rng));
    EXPECT_EQ(reconstruct_ranks(rank_decompose(r, g)).ranks, r.ranks);
  }
}

TEST(Decompose, ClassExamplesOnThreeComponents) {
  const auto x = three_components();
  for (int n = 1; n <= 3; ++n) {
    EXPECT_EQ(decompose_class(bott(n, x).realized, *x, true), generic_vector(0, {0, 0, n}, 1));
    EXPECT_EQ(decompose_class(bott(-n, x).realized, *x, true), generic_vector(0, {0, 0, -n}, 1));
    EXPECT_EQ(decompose_class(powers_rieffel(n, x).realized, *x, false), generic_vector(0, {0, 0, n}, 0));
  }
  const auto v = decompose_class(bott(2, x).realized, *x, true);
  EXPECT_EQ(format_class(v, *x, "P_2"), "[P_2] = [1] + 2·[χ_(q,1)]");
  const auto chi3 = indicator({Rational(1, 8), false, Rational(1), false}, x);
  EXPECT_EQ(format_class(decompose_class(chi3.realized, *x, true), *x), "3·[χ_(q,1)]");
  EXPECT_EQ(format_class(decompose_class(unit_projection(x).realized, *x, true), *x), "[1]");
}

TEST(Decompose, NonUnitalRejectsUnit) {
  const auto x = three_components();
  EXPECT_THROW(decompose_class(unit_projection(x).realized, *x, false), ModelError);
}

TEST(Decompose, FullSpectrumUsesR1Basis) {
  const auto x = full("1/2");
  KClassVector want;
  want.basis = SpectrumKind::Full;
  want.n = {1};
  want.m = 1;
  EXPECT_EQ(decompose_class(bott(1, x).realized, *x, true), want);
  want.n = {-2};
  EXPECT_EQ(decompose_class(bott(-2, x).realized, *x, true), want);
  EXPECT_EQ(format_class(want, *x, "P_-2"), "[P_-2] = [1] - 2·[R_1]");
}

TEST(Decompose, RoundTripOnLatticeCombinations) {
  Rng rng(23);
  std::uniform_int_distribution<int> coeff(0, 2);
  for (int n : {1, 2, 3}) {
    const auto x = random_generic(rng, n);
    const auto gens = generator_projections(x, true);
    for (int trial = 0; trial < 4; ++trial) {
      // Nonnegative coefficients realize the class as a block sum.
      std::vector<long> c;
      std::optional<ProjectionSpec> sum;
      for (const auto& gspec : gens) {
        c.push_back(coeff(rng));
        for (long k = 0; k < c.back(); ++k) sum = sum ? block_sum(*sum, gspec) : gspec;
      }
      if (!sum) continue;
      const auto v = decompose_class(sum->realized, *x, true);
      EXPECT_EQ(v.l, c.front());
      EXPECT_EQ(v.m, c.back());
      for (int j = 0; j < n; ++j) EXPECT_EQ(v.n[j], c[j + 1]);
      EXPECT_EQ(predicted_pairing(v), [&] {
        std::vector<long> p;
        for (const auto& r : pairing_vector(sum->realized, homology_family(*x))) p.push_back(r.rounded);
        return p;
      }());
    }
  }
}

TEST(Identity, ClassIdentitiesHold) {
  const auto x = three_components();
  const auto one = unit_projection(x);
  const auto chi_q = indicator({Rational(1, 2), false, Rational(1), false}, x);
  for (int n = 1; n <= 5; ++n) {
    const auto r = powers_rieffel(n, x);
    EXPECT_TRUE(verify_identity({{1, bott(n, x)}}, {{1, one}, {1, r}}, *x).equal);
    EXPECT_TRUE(verify_identity({{1, bott(-n, x)}}, {{1, complement(r)}}, *x).equal);
    EXPECT_TRUE(verify_identity({{1, bott(-n, x)}}, {{1, one}, {-n, chi_q}}, *x).equal);
    const auto chi_n = indicator({pow(Rational(1, 2), n), false, Rational(1), false}, x);
    EXPECT_TRUE(verify_identity({{1, chi_n}}, {{n, chi_q}}, *x).equal);
  }
  const auto rep = verify_identity({{1, bott(2, x)}}, {{1, one}}, *x);
  EXPECT_FALSE(rep.equal);
  EXPECT_EQ(rep.columns.size(), 5u);
  EXPECT_EQ(rep.lhs, (std::vector<long>{1, 2, 2, 2, 1}));
  EXPECT_EQ(rep.rhs, (std::vector<long>{1, 0, 0, 0, 1}));
}

TEST(Determinant, GeneratorPairingIsUnimodular) {
  Rng rng(101);
  for (int n = 1; n <= 6; ++n) {
    const auto x = random_generic(rng, n);
    const auto m = integer_pairing_matrix(generator_projections(x, true), homology_family(*x));
    ASSERT_EQ(m.size(), static_cast<std::size_t>(n + 2));
    const long d = integer_determinant(m);
    EXPECT_TRUE(d == 1 || d == -1) << "n=" << n << " det=" << d;
  }
}

TEST(Determinant, SmallCases) {
  EXPECT_EQ(integer_determinant({{2}}), 2);
  EXPECT_EQ(integer_determinant({{1, 2}, {3, 4}}), -2);
  EXPECT_EQ(integer_determinant({{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(integer_determinant({{2, 0, 1}, {1, 3, 2}, {1, 1, 1}}), 0);
  EXPECT_EQ(integer_determinant({{0, 2, 1}, {1, 0, 0}, {3, 1, 4}}), -7);
  EXPECT_THROW(integer_determinant({{1, 2}}), ModelError);
}
