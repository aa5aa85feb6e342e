#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qplane/rational.hpp"

namespace qplane {

/// One maximal constant piece of a StepFunction, for display and export.
struct StepPiece {
  Rational lo;
  bool lo_closed;
  std::optional<Rational> hi;  // nullopt: unbounded above
  bool hi_closed;
  Rational value;
};

/// Exact piecewise-constant function on [0, inf) with finitely many rational
/// breakpoints. Stored in canonical form so that == is function equality.
class StepFunction {
 public:
  StepFunction() : StepFunction(Rational(0)) {}
  explicit StepFunction(Rational constant);

  /// value * indicator of the interval from lo to hi (hi = nullopt: to inf).
  static StepFunction indicator(const Rational& lo, bool lo_closed,
                                const std::optional<Rational>& hi, bool hi_closed,
                                const Rational& value = Rational(1));

  Rational value_at(const Rational& t) const;
  double value_at(double t) const;

  Rational at_zero() const { return point_.front(); }
  /// Value on (0, first positive breakpoint).
  Rational near_zero() const { return open_.front(); }
  /// Value on the unbounded tail, i.e. the limit at infinity.
  Rational at_infinity() const { return open_.back(); }

  /// Breakpoints other than 0, ascending.
  std::vector<Rational> positive_breakpoints() const {
    return {breaks_.begin() + 1, breaks_.end()};
  }
  std::vector<StepPiece> pieces() const;

  /// x -> f(q^m x); breakpoint b moves to b q^{-m}.
  StepFunction alpha_shift(int m, const Rational& q) const;

  bool is_zero() const;
  StepFunction scaled(const Rational& c) const;

  friend StepFunction operator+(const StepFunction& a, const StepFunction& b);
  friend StepFunction operator*(const StepFunction& a, const StepFunction& b);
  friend StepFunction operator-(const StepFunction& a, const StepFunction& b);
  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  template <typename Op>
  static StepFunction combine(const StepFunction& a, const StepFunction& b, Op op);
  std::size_t locate(const Rational& t) const;
  void normalize();

  // breaks_[0] == 0. point_[i] is the value at breaks_[i]; open_[i] the
  // value on (breaks_[i], breaks_[i+1]), with the last one running to inf.
  std::vector<Rational> breaks_;
  std::vector<Rational> point_;
  std::vector<Rational> open_;
};

/// Closed interval [lo, hi] outside of which a SmoothFunction vanishes.
struct Support {
  double lo;
  double hi;
  bool empty() const { return lo > hi; }
};

/// Opaque double-precision evaluator with declared boundary data. The
/// alpha-shift is tracked as an integer exponent so that composed shifts
/// collapse exactly.
class SmoothFunction {
 public:
  using Evaluator = std::function<double(double)>;

  SmoothFunction(Evaluator f, double at_zero, std::optional<double> at_infinity,
                 std::optional<Support> support = std::nullopt);

  double operator()(double t) const;

  double at_zero() const { return at_zero_; }
  std::optional<double> at_infinity() const { return at_infinity_; }
  /// Region outside which the function is identically zero, in the shifted
  /// variable.
  std::optional<Support> support() const;

  SmoothFunction alpha_shift(int m, const Rational& q) const;
  SmoothFunction scaled(double c) const;
  bool is_zero() const;

  friend SmoothFunction operator+(const SmoothFunction& a, const SmoothFunction& b);
  friend SmoothFunction operator*(const SmoothFunction& a, const SmoothFunction& b);

 private:
  std::shared_ptr<const Evaluator> base_;
  double at_zero_;
  std::optional<double> at_infinity_;
  std::optional<Support> base_support_;
  int shift_ = 0;
  double scale_ = 1.0;  // q^shift_
};

/// Grid used to compare SmoothFunctions: `density` points in each
/// fundamental domain (q^{j+1}, q^j] for j in [k_min, k_max], plus t = 0.
struct SamplingGrid {
  int k_min = -64;
  int k_max = 64;
  int density = 1024;
};

/// An element of C_0(X), or of C(X u {inf}) when the value at infinity is
/// nonzero.
class QFunction {
 public:
  QFunction() : impl_(StepFunction()) {}
  QFunction(StepFunction f) : impl_(std::move(f)) {}
  QFunction(SmoothFunction f) : impl_(std::move(f)) {}

  bool is_step() const { return std::holds_alternative<StepFunction>(impl_); }
  const StepFunction& step() const { return std::get<StepFunction>(impl_); }
  const SmoothFunction& smooth() const { return std::get<SmoothFunction>(impl_); }

  /// Throws ModelError for t < 0.
  double evaluate(double t) const;
  /// Exact for step functions; for smooth ones the double result is lifted.
  double evaluate(const Rational& t) const;
  double at_zero() const;
  /// Throws ModelError when no value at infinity was declared.
  double at_infinity() const;
  bool has_infinity_value() const;

  /// True when the function is known to be identically zero (exact for step
  /// functions, via an empty support for smooth ones).
  bool is_zero() const;

  /// An interval [lo, hi] such that f(t) = f(0) for 0 <= t < lo and
  /// f(t) = f(inf) for t > hi, if one is known.
  std::optional<Support> active_region() const;

  QFunction alpha_shift(int m, const Rational& q) const;
  QFunction scaled(const Rational& c) const;
  QFunction conj() const { return *this; }

  friend QFunction operator+(const QFunction& a, const QFunction& b);
  friend QFunction operator*(const QFunction& a, const QFunction& b);
  friend QFunction operator-(const QFunction& a, const QFunction& b);

 private:
  std::variant<StepFunction, SmoothFunction> impl_;
};

QFunction alpha_shift(const QFunction& f, int m, const Rational& q);

/// Largest |f| over the sampling grid, the origin, and (when declared) the
/// value at infinity. Exact-zero step functions give exactly 0.
double sup_abs(const QFunction& f, const Rational& q, const SamplingGrid& grid = {});

/// Exact for two step functions; otherwise sup_abs(a - b) <= tol.
bool approx_equal(const QFunction& a, const QFunction& b, const Rational& q,
                  const SamplingGrid& grid = {}, double tol = 1e-10);

/// Grid points t with f sampled by sup_abs, in ascending order.
std::vector<double> grid_points(const Rational& q, const SamplingGrid& grid);

/// The ramp phi(t) = (t - q)/(1 - q) on [q,1] together with
/// h = sqrt(phi (1 - phi)) and the four-branch f_n used by R_n.
struct BumpFunctions {
  SmoothFunction phi;
  SmoothFunction h;
  SmoothFunction f_n;
};

/// Throws ModelError for n <= 0.
BumpFunctions bump_phi_h_fn(const Rational& q, int n);

}  // namespace qplane
