#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "qplane/errors.hpp"
#include "qplane/ktheory.hpp"
#include "qplane/pairing.hpp"
#include "qplane/projlib.hpp"

using namespace qplane;
using qplane::testing::full;
using qplane::testing::three_components;

namespace {

constexpr double kIntegerTol = 1e-6;
constexpr int kMaxWindow = 512;

// Direct long-double summation of the Bott diagonal difference over a wide
// window: (s_-/(1+s_-) - [k<=0]) + (1/(1+s_+) - [k>0]) at t = q^k y, with
// the roles of s_- and s_+ swapped for negative n.
long double bott_trace_oracle(long double q, long double y, int n) {
  const int m = std::abs(n);
  long double sum = 0;
  for (int k = -400; k <= 400; ++k) {
    const long double t2m = std::pow(std::pow(q, k) * y, 2 * m);
    const long double sm = std::pow(q, -m * (m - 1)) * t2m;
    const long double sp = std::pow(q, m * (m + 1)) * t2m;
    const long double top = n > 0 ? sm : sp;
    const long double bottom = n > 0 ? sp : sm;
    const long double a = std::isinf(top) ? 1.0L : top / (1 + top);
    const long double b = std::isinf(bottom) ? 0.0L : 1 / (1 + bottom);
    sum += (a - (k <= 0 ? 1 : 0)) + (b - (k > 0 ? 1 : 0));
  }
  return sum;
}

CrossedMatrix scalar_step(const std::shared_ptr<const SpectralSet>& x, const StepFunction& f) {
  return CrossedMatrix::scalar(CrossedElement::monomial(x, f, 0));
}

}  // namespace

TEST(Pairing, BottAgainstFredholmMatchesDirectSummation) {
  for (const char* qs : {"1/2", "3/4"}) {
    const auto x = full(qs);
    const auto f = KHomClass::fredholm(Rational(7, 10));
    for (int n : {1, 2, 3, 4, 5, -1, -2, -3, -4, -5}) {
      const auto r = pair(f, bott(n, x).realized);
      const long double oracle = bott_trace_oracle(to_double(x->q()), 0.7L, n);
      EXPECT_NEAR(r.raw, static_cast<double>(oracle), 1e-10) << qs << " n=" << n;
      EXPECT_EQ(r.rounded, n);
      EXPECT_TRUE(r.integral);
      EXPECT_LT(r.residual, kIntegerTol);
      EXPECT_FALSE(r.exact);
      EXPECT_LE(r.window_used, kMaxWindow);
    }
  }
}

// Doubling from 64 settles on the first comparison for these inputs.
TEST(Pairing, BottWindowFrozen) {
  const auto r = pair(KHomClass::fredholm(Rational(7, 10)), bott(1, full("1/2")).realized);
  EXPECT_EQ(r.window_used, 128);
}

TEST(Pairing, PowersRieffelIsWindowExact) {
  for (const char* qs : {"1/2", "3/4"}) {
    const auto x = full(qs);
    for (int n = 1; n <= 5; ++n) {
      const auto p = powers_rieffel(n, x).realized;
      const auto r = pair(KHomClass::fredholm(Rational(7, 10)), p);
      EXPECT_TRUE(r.exact);
      EXPECT_EQ(r.rounded, n);
      EXPECT_LT(r.residual, 1e-12);
      EXPECT_EQ(pair(KHomClass::evinf(), p).rounded, 0);
      EXPECT_EQ(pair(KHomClass::ev0(), p).rounded, 0);
    }
  }
}

TEST(Pairing, ClassicalPointsAreRanks) {
  const auto x = full("1/2");
  for (int n : {1, -3}) {
    EXPECT_EQ(pair(KHomClass::evinf(), bott(n, x).realized).rounded, 1);
    EXPECT_EQ(pair(KHomClass::ev0(), bott(n, x).realized).rounded, 1);
  }
  const auto one = unit_projection(x).realized;
  EXPECT_EQ(pair(KHomClass::evinf(), one).rounded, 1);
  EXPECT_EQ(pair(KHomClass::fredholm(Rational(7, 10)), one).raw, 0.0);
  EXPECT_TRUE(pair(KHomClass::fredholm(Rational(7, 10)), one).exact);
}

TEST(Pairing, IndicatorsOnThreeComponents) {
  const auto x = three_components();
  const auto fam = homology_family(*x);
  ASSERT_EQ(fam.size(), 5u);

  const auto v1 = pairing_vector(unit_projection(x).realized, fam);
  const auto low = pairing_vector(indicator({Rational(0), true, Rational(1, 2), false}, x).realized, fam);
  const std::vector<long> want1{1, 0, 0, 0, 1};
  const std::vector<long> want_low{1, 0, 0, 0, 0};
  for (std::size_t i = 0; i < fam.size(); ++i) {
    EXPECT_EQ(v1[i].rounded, want1[i]);
    EXPECT_EQ(low[i].rounded, want_low[i]);
    EXPECT_TRUE(low[i].exact);
  }

  // chi_(23/40,1): seen by F_0 (y=71/100) and F_1 (y=61/100), not F_2.
  const auto mid = pairing_vector(indicator({Rational(23, 40), false, Rational(1), false}, x).realized, fam);
  const std::vector<long> want_mid{0, 1, 1, 0, 0};
  for (std::size_t i = 0; i < fam.size(); ++i) EXPECT_EQ(mid[i].rounded, want_mid[i]);

  for (int n = 1; n <= 5; ++n) {
    const auto chi = indicator({pow(x->q(), n), false, Rational(1), false}, x).realized;
    for (std::size_t i = 1; i <= 3; ++i) EXPECT_EQ(pair(fam[i], chi).raw, static_cast<double>(n));
  }
  const auto g = gap_structure(*x);
  const auto via_gaps = pairing_vector(unit_projection(x).realized, g);
  for (std::size_t i = 0; i < fam.size(); ++i) EXPECT_EQ(via_gaps[i].rounded, want1[i]);
}

TEST(Pairing, AdditiveOverBlockSums) {
  const auto x = three_components();
  const auto f = homology_family(*x)[2];
  const auto a = bott(2, x);
  const auto b = indicator({Rational(23, 40), false, Rational(1), false}, x);
  const double sum = pair(f, block_sum(a, b).realized).raw;
  EXPECT_NEAR(sum, pair(f, a.realized).raw + pair(f, b.realized).raw, 1e-12);
}

TEST(Pairing, InvariantUnderMovingYWithinAComponent) {
  const auto x = three_components();
  const auto g = gap_structure(*x);
  for (std::size_t c = 0; c < g.components.size(); ++c) {
    const auto f1 = KHomClass::fredholm(g.components[c].lo);
    const auto f2 = KHomClass::fredholm(g.components[c].hi);
    std::vector<ProjectionSpec> ps = generator_projections(x, true);
    for (int n : {1, 2, -3}) ps.push_back(bott(n, x));
    ps.push_back(powers_rieffel(2, x));
    for (const auto& p : ps) EXPECT_EQ(pair(f1, p.realized).rounded, pair(f2, p.realized).rounded) << p.label;
  }
}

TEST(Pairing, FlagsNonIntegralInput) {
  const auto x = full("1/2");
  const auto half = CrossedMatrix::scalar(CrossedElement::unit(x).scaled(Rational(1, 2)));
  const auto r = pair(KHomClass::ev0(), half);
  EXPECT_FALSE(r.integral);
  EXPECT_DOUBLE_EQ(r.residual, 0.5);
}

TEST(Pairing, ReportsNonConvergenceWithLastValues) {
  const auto x = full("1/2");
  // Decays like 1/|log t| along the orbit: the trace diverges.
  const SmoothFunction slow([](double t) { return 1.0 / (1.0 + std::abs(std::log2(t))); }, 0.0, 0.0);
  const auto p = CrossedMatrix::scalar(CrossedElement::monomial(x, slow, 0));
  PairingOptions opt;
  opt.max_window = 512;
  try {
    pair(KHomClass::fredholm(Rational(7, 10)), p, opt);
    FAIL() << "expected NonConvergence";
  } catch (const NonConvergence& e) {
    EXPECT_EQ(e.window(), 512);
    EXPECT_GT(e.last(), e.previous());
  }
}

TEST(Pairing, Preconditions) {
  const auto x = full("1/2");
  const auto outside = CrossedMatrix::scalar(
      CrossedElement::monomial(x, StepFunction::indicator(Rational(1), true, std::nullopt, false), 1));
  EXPECT_THROW(pair(KHomClass::evinf(), outside), ModelError);
  EXPECT_THROW(pair(KHomClass::fredholm(Rational(7, 10)), outside), ModelError);
  EXPECT_THROW(pair(KHomClass::fredholm(Rational(1, 2)), bott(1, three_components()).realized), ModelError);
  PairingOptions bad;
  bad.max_window = 8;
  EXPECT_THROW(pair(KHomClass::fredholm(Rational(7, 10)), bott(1, x).realized, bad), ModelError);
}

TEST(Pairing, TableMatchesSequentialEvaluation) {
  const auto x = three_components();
  const auto fam = homology_family(*x);
  std::vector<CrossedMatrix> rows;
  for (const auto& p : generator_projections(x, true)) rows.push_back(p.realized);
  rows.push_back(bott(3, x).realized);
  const auto table = pairing_table(rows, fam);
  ASSERT_EQ(table.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto seq = pairing_vector(rows[i], fam);
    for (std::size_t j = 0; j < fam.size(); ++j) EXPECT_EQ(table[i][j].raw, seq[j].raw);
  }
}

TEST(Pairing, FamilyShapes) {
  const auto f = homology_family(*full("1/2"));
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[1].y, Rational(3, 4));
  EXPECT_EQ(homology_family(*full("1/2"), Rational(7, 10))[1].y, Rational(7, 10));
  EXPECT_EQ(f[0].label(), "ev0");
  EXPECT_EQ(f[2].label(), "evinf");
  EXPECT_EQ(homology_family(*three_components())[1].label(), "F_0(y=71/100)");
}

TEST(Telescoping, DirectAndReindexedFormsAgree) {
  for (int n = 1; n <= 4; ++n) {
    const auto r = telescoping_check(n, Rational(7, 10), Rational(1, 2), 64);
    EXPECT_NEAR(r.direct, n, 1e-12);
    EXPECT_NEAR(r.closed_form, n, 1e-12);
    EXPECT_LT(r.difference, 1e-10);
    EXPECT_LT(r.shift_sum1_error, 1e-12);
    EXPECT_LT(r.shift_sum2_error, 1e-12);
    EXPECT_NEAR(r.negative_direct, -n, 1e-12);
    EXPECT_LT(r.negative_term_mismatch, 1e-15);
  }
}

TEST(Telescoping, TailIsGeometric) {
  // At a short window the truncation error is visible and bounded.
  const auto r = telescoping_check(1, Rational(4, 5), Rational(3, 4), 8);
  EXPECT_GT(r.difference, 0.0);
  EXPECT_LE(r.difference, r.tail_bound);
}

TEST(Telescoping, Preconditions) {
  EXPECT_THROW(telescoping_check(0, Rational(7, 10), Rational(1, 2), 64), ModelError);
  EXPECT_THROW(telescoping_check(1, Rational(2, 5), Rational(1, 2), 64), ModelError);
  EXPECT_THROW(telescoping_check(1, Rational(7, 10), Rational(1), 64), ModelError);
  EXPECT_THROW(telescoping_check(3, Rational(7, 10), Rational(1, 2), 2), ModelError);
}
