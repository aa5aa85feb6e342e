#pragma once

#include <optional>
#include <string>

#include "qplane/crossed.hpp"

namespace qplane {

/// Interval with open/closed ends over [0, inf); hi = nullopt is unbounded.
struct IndicatorInterval {
  Rational lo;
  bool lo_closed = false;
  std::optional<Rational> hi;
  bool hi_closed = false;

  std::string label() const;
};

enum class ProjectionKind { Bott, PowersRieffel, Indicator, Unit, Derived };

/// A named K-theory representative together with its realization.
struct ProjectionSpec {
  ProjectionKind kind;
  int n = 0;                                // Bott / PowersRieffel index
  std::optional<IndicatorInterval> interval;  // Indicator only
  std::string label;
  CrossedMatrix realized;
};

/// P_n for n > 0 and P_{-|n|} for n < 0, as a 2x2 matrix over the
/// unitization. Throws ModelError for n == 0.
ProjectionSpec bott(int n, std::shared_ptr<const SpectralSet> x);

/// R_n = U^n h + f_n + h U^{-n}, n >= 1.
ProjectionSpec powers_rieffel(int n, std::shared_ptr<const SpectralSet> x);

/// chi_A at U-power 0. Every finite endpoint other than 0 must lie outside X,
/// otherwise ModelError("discontinuous indicator").
ProjectionSpec indicator(const IndicatorInterval& interval, std::shared_ptr<const SpectralSet> x);

ProjectionSpec unit_projection(std::shared_ptr<const SpectralSet> x);

/// 1 - p for a 1x1 projection.
ProjectionSpec complement(const ProjectionSpec& p);

/// p (+) p' as a block-diagonal projection.
ProjectionSpec block_sum(const ProjectionSpec& a, const ProjectionSpec& b);

struct ProjectionCheck {
  double idempotency_error = 0.0;  // sup |p^2 - p|
  double adjoint_error = 0.0;      // sup |p^* - p|
  bool exact = false;              // decided in exact arithmetic
  bool passed = false;

  double sup_error() const { return std::max(idempotency_error, adjoint_error); }
};

struct VerifyOptions {
  double tol = 1e-9;
  int window = 64;
  int grid_density = 1024;
};

/// Checks p^* = p and p^2 = p coefficientwise: exactly when every entry has
/// step-function coefficients, otherwise on a grid covering the fundamental
/// domains j in [-(window + maxpow), window + maxpow].
ProjectionCheck verify_projection(const CrossedMatrix& p, const VerifyOptions& options = {});
ProjectionCheck verify_projection(const ProjectionSpec& p, const VerifyOptions& options = {});

}  // namespace qplane
