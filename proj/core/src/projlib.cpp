#include "qplane/projlib.hpp"

#include <cmath>
#include <limits>

#include "qplane/errors.hpp"

namespace qplane {

std::string IndicatorInterval::label() const {
  std::string s = "χ_";
  s += lo_closed ? "[" : "(";
  s += to_string(lo) + "," + (hi ? to_string(*hi) : std::string("inf"));
  s += hi_closed ? "]" : ")";
  return s;
}

namespace {

// The three shapes that make up every Bott entry, as functions of
// s = c t^{2n}: s/(1+s), sqrt(s)/(1+s) and 1/(1+s).
enum class BottShape { Rising, Bump, Falling };

SmoothFunction bott_entry(BottShape shape, double c, int n) {
  auto eval = [shape, c, n](double t) {
    const double s = c * std::pow(t, 2 * n);
    if (std::isinf(s)) return shape == BottShape::Rising ? 1.0 : 0.0;
    switch (shape) {
      case BottShape::Rising: return s / (1.0 + s);
      case BottShape::Bump: return std::sqrt(s) / (1.0 + s);
      case BottShape::Falling: return 1.0 / (1.0 + s);
    }
    return 0.0;
  };
  switch (shape) {
    case BottShape::Rising: return SmoothFunction(eval, 0.0, 1.0);
    case BottShape::Bump: return SmoothFunction(eval, 0.0, 0.0);
    case BottShape::Falling: return SmoothFunction(eval, 1.0, 0.0);
  }
  throw ModelError("unreachable bott shape");
}

}  // namespace

ProjectionSpec bott(int n, std::shared_ptr<const SpectralSet> x) {
  if (n == 0) throw ModelError("bott(0) is not a Bott class; use n != 0");
  const int m = std::abs(n);
  const double q = to_double(x->q());
  // s_minus = q^{-m(m-1)} t^{2m}, s_plus = q^{m(m+1)} t^{2m}.
  const double c_minus = std::pow(q, -m * (m - 1));
  const double c_plus = std::pow(q, m * (m + 1));

  // For P_m the top row uses s_minus and the U-power -m; P_{-m} swaps the
  // roles of the two weights and of U^m / U^{-m}.
  const double c_top = n > 0 ? c_minus : c_plus;
  const double c_bottom = n > 0 ? c_plus : c_minus;
  const int top_power = n > 0 ? -m : m;

  CrossedMatrix p(x, 2);
  p(0, 0) = CrossedElement::monomial(x, bott_entry(BottShape::Rising, c_top, m), 0);
  p(0, 1) = CrossedElement::monomial(x, bott_entry(BottShape::Bump, c_top, m), top_power);
  p(1, 0) = CrossedElement::monomial(x, bott_entry(BottShape::Bump, c_bottom, m), -top_power);
  p(1, 1) = CrossedElement::monomial(x, bott_entry(BottShape::Falling, c_bottom, m), 0);

  return ProjectionSpec{ProjectionKind::Bott, n, std::nullopt, "P_" + std::to_string(n), std::move(p)};
}

ProjectionSpec powers_rieffel(int n, std::shared_ptr<const SpectralSet> x) {
  if (n < 1) throw ModelError("powers_rieffel needs n >= 1, got " + std::to_string(n));
  const auto bumps = bump_phi_h_fn(x->q(), n);
  CrossedElement r = CrossedElement::left_unitary(x, n, bumps.h) +
                     CrossedElement::monomial(x, bumps.f_n, 0) +
                     CrossedElement::monomial(x, bumps.h, -n);
  return ProjectionSpec{ProjectionKind::PowersRieffel, n, std::nullopt, "R_" + std::to_string(n),
                        CrossedMatrix::scalar(r)};
}

ProjectionSpec indicator(const IndicatorInterval& iv, std::shared_ptr<const SpectralSet> x) {
  if (iv.lo < 0) throw ModelError("indicator interval starts below 0");
  if (iv.hi && *iv.hi < iv.lo) throw ModelError("indicator interval is reversed");
  const auto check = [&](const Rational& e) {
    if (x->contains(e))
      throw ModelError("discontinuous indicator: endpoint " + to_string(e) + " lies in the spectrum");
  };
  if (iv.lo > 0) check(iv.lo);
  else if (!iv.lo_closed) throw ModelError("discontinuous indicator: open at 0, which lies in the spectrum");
  if (iv.hi) {
    if (*iv.hi == 0) throw ModelError("discontinuous indicator: endpoint 0 lies in the spectrum");
    check(*iv.hi);
  }

  auto f = StepFunction::indicator(iv.lo, iv.lo_closed, iv.hi, iv.hi_closed);
  return ProjectionSpec{ProjectionKind::Indicator, 0, iv, iv.label(),
                        CrossedMatrix::scalar(CrossedElement::monomial(x, f, 0))};
}

ProjectionSpec unit_projection(std::shared_ptr<const SpectralSet> x) {
  return ProjectionSpec{ProjectionKind::Unit, 0, std::nullopt, "1", CrossedMatrix::identity(x, 1)};
}

ProjectionSpec complement(const ProjectionSpec& p) {
  if (p.realized.size() != 1) throw ModelError("complement is defined for 1x1 projections");
  CrossedMatrix c = CrossedMatrix::identity(p.realized.ambient_ptr(), 1) - p.realized;
  return ProjectionSpec{ProjectionKind::Derived, 0, std::nullopt, "1-" + p.label, std::move(c)};
}

ProjectionSpec block_sum(const ProjectionSpec& a, const ProjectionSpec& b) {
  return ProjectionSpec{ProjectionKind::Derived, 0, std::nullopt, a.label + "⊕" + b.label,
                        direct_sum(a.realized, b.realized)};
}

ProjectionCheck verify_projection(const CrossedMatrix& p, const VerifyOptions& options) {
  bool all_step = true;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      for (const auto& [k, f] : p(i, j).coefficients()) all_step = all_step && f.is_step();

  const int reach = options.window + p.max_power();
  const SamplingGrid grid{-reach, reach, options.grid_density};

  ProjectionCheck out;
  out.exact = all_step;
  out.adjoint_error = sup_distance(p.adjoint(), p, grid);
  out.idempotency_error = sup_distance(p * p, p, grid);
  const double err = out.sup_error();
  out.passed = !std::isnan(err) && (all_step ? err == 0.0 : err <= options.tol);
  return out;
}

ProjectionCheck verify_projection(const ProjectionSpec& p, const VerifyOptions& options) {
  return verify_projection(p.realized, options);
}

}  // namespace qplane
