#pragma once

#include <vector>

#include "qplane/rational.hpp"

namespace qplane {

/// The real number r * q^m for the ambient deformation parameter q.
/// Multiplying by q shifts the exponent and never touches r.
struct ScaledRational {
  Rational r{0};
  int m = 0;

  ScaledRational times_q(int k = 1) const { return {r, m + k}; }
  Rational value(const Rational& q) const;
  double to_double(const Rational& q) const;

  friend ScaledRational operator*(const ScaledRational& a, const ScaledRational& b) {
    return {a.r * b.r, a.m + b.m};
  }
};

/// -1, 0 or +1 as a < b, a == b, a > b once q is fixed.
int compare(const ScaledRational& a, const ScaledRational& b, const Rational& q);

struct ClosedInterval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& t) const { return lo <= t && t <= hi; }
  friend bool operator==(const ClosedInterval&, const ClosedInterval&) = default;
};

enum class SpectrumKind { Full, Generic };

/// A q-invariant set X = {0} u U_n q^n Y with Y a finite union of closed
/// rational intervals strictly inside (q, 1), or X = [0, inf) for Full.
class SpectralSet {
 public:
  static SpectralSet full(Rational q);

  /// Sorts the intervals and merges any that overlap or touch. Throws
  /// ModelError when q is outside (0,1), the list is empty, an interval is
  /// reversed, or an endpoint leaves the open interval (q, 1).
  static SpectralSet generic(Rational q, std::vector<ClosedInterval> intervals);

  const Rational& q() const { return q_; }
  SpectrumKind kind() const { return kind_; }
  bool is_full() const { return kind_ == SpectrumKind::Full; }

  /// Connected components of Y in ascending order; empty for Full.
  const std::vector<ClosedInterval>& components() const { return components_; }

  bool contains(const Rational& t) const;
  bool contains(const ScaledRational& t) const;

  /// y in (q,1] that is also in X; the admissible base points of pi_y.
  bool admits_base_point(const Rational& y) const;

  friend bool operator==(const SpectralSet&, const SpectralSet&) = default;

 private:
  SpectralSet(Rational q, SpectrumKind kind, std::vector<ClosedInterval> components)
      : q_(std::move(q)), kind_(kind), components_(std::move(components)) {}

  Rational q_;
  SpectrumKind kind_;
  std::vector<ClosedInterval> components_;
};

/// The open interval (lo, hi) of (q, s] \ Y with its chosen sample point.
struct Gap {
  Rational lo;
  Rational hi;
  Rational sample;
};

struct Component {
  Rational lo;
  Rational hi;
  Rational witness;
};

/// Gaps and components are both listed top-down (descending position), so
/// gaps[j] sits directly below components[j] and gaps.back() is (q, min Y).
struct GapStructure {
  Rational q;
  Rational s;
  std::vector<Gap> gaps;
  std::vector<Component> components;

  std::size_t lowest_gap() const { return gaps.size() - 1; }
};

/// Throws ModelError("no gap structure for full spectrum") for Full.
GapStructure gap_structure(const SpectralSet& x);

/// True iff t = 0 or q^{-m} t lies in Y for the m moving it into (q, 1].
bool in_spectrum(const SpectralSet& x, const ScaledRational& t);

}  // namespace qplane
