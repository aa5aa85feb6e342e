#pragma once

#include <string>
#include <vector>

#include "qplane/crossed.hpp"
#include "qplane/spectral.hpp"

namespace qplane {

/// A K-homology class of the unitized algebra: one of the two classical
/// points (ev0, 0), (evinf, 0), or the Fredholm module (pi_y, pi0 (+) piinf).
struct KHomClass {
  enum class Kind { Ev0, EvInf, Fredholm };

  Kind kind = Kind::Ev0;
  int component = -1;  // index into GapStructure::components, -1 if ad hoc
  Rational y{0};

  static KHomClass ev0() { return {Kind::Ev0, -1, Rational(0)}; }
  static KHomClass evinf() { return {Kind::EvInf, -1, Rational(0)}; }
  static KHomClass fredholm(Rational y, int component = -1) { return {Kind::Fredholm, component, std::move(y)}; }

  std::string label() const;
};

struct PairingOptions {
  double tol = 1e-9;          // |trace(K) - trace(2K)| stopping rule
  double integer_tol = 1e-6;  // residual accepted as integral
  int initial_window = 64;
  int max_window = 8192;
};

struct PairingResult {
  double raw = 0.0;
  long rounded = 0;
  double residual = 0.0;
  int window_used = 0;  // 0 for the classical points
  bool exact = false;   // no truncation error: every diagonal difference is finitely supported
  bool integral = false;
};

/// Index pairing <F, [p]>. Classical points: trace of the evaluated matrix.
/// Fredholm: trace of pi_y(p) - (pi0 (+) piinf)(p), computed exactly when all
/// diagonal differences have bounded support inside the window, otherwise by
/// doubling the window until successive traces agree within options.tol.
///
/// Throws NonConvergence past options.max_window and ModelError when p is
/// outside the unitization or y is not a valid base point.
PairingResult pair(const KHomClass& f, const CrossedMatrix& p, const PairingOptions& options = {});

/// Truncated Fredholm trace at a fixed window, no adaptivity.
double fredholm_trace(const CrossedMatrix& p, const Rational& y, int K);

/// {ev0, F_gamma (descending y_gamma), evinf}. For a full spectrum there are
/// no gaps and a single Fredholm class at `full_y` (default: midpoint of (q,1]).
std::vector<KHomClass> homology_family(const SpectralSet& x);
std::vector<KHomClass> homology_family(const SpectralSet& x, const Rational& full_y);

/// Pairings of p with every class of the family, in family order.
std::vector<PairingResult> pairing_vector(const CrossedMatrix& p, const std::vector<KHomClass>& family,
                                          const PairingOptions& options = {});
std::vector<PairingResult> pairing_vector(const CrossedMatrix& p, const GapStructure& g,
                                          const PairingOptions& options = {});

/// rows x family pairing table; rows are computed concurrently.
std::vector<std::vector<PairingResult>> pairing_table(const std::vector<CrossedMatrix>& rows,
                                                      const std::vector<KHomClass>& family,
                                                      const PairingOptions& options = {});

/// Direct partial sums of the winding series of <F_y, [P_n]> against the
/// re-indexed closed form sum_{k=0}^{n-1} (x_k/(1+x_k) + 1/(1+x_k)).
struct TelescopingReport {
  int n = 0;
  int K = 0;
  double direct = 0.0;         // sum_{k=-K}^{K} of the P_n summand
  double closed_form = 0.0;    // the n surviving terms after re-indexing
  double difference = 0.0;     // |direct - closed_form|
  double tail_bound = 0.0;     // geometric bound (ratio q^{2n}) on the omitted terms
  double shift_sum1_error = 0.0;  // k -> n+k identity at this window
  double shift_sum2_error = 0.0;  // k -> n-k identity at this window
  double negative_direct = 0.0;   // same series for P_{-n}
  double negative_term_mismatch = 0.0;  // max_k |term_{-n}(k) + term_n(k)|
};

/// Requires n >= 1, y in (q,1]. Throws ModelError otherwise.
TelescopingReport telescoping_check(int n, const Rational& y, const Rational& q, int K);

}  // namespace qplane
