#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qplane/crossed.hpp"

namespace qplane {

/// Finite window span{e_{-K}, ..., e_K} of l2(Z). Row/column i of every
/// matrix built here corresponds to basis index i - K.
struct Window {
  int K;

  int dim() const { return 2 * K + 1; }
  int row(int index) const { return index + K; }
  bool contains(int index) const { return index >= -K && index <= K; }
};

/// Matrix of pi_y(a) on the window: pi_y(U) e_n = e_{n-1} and
/// pi_y(f) e_n = f(q^n y) e_n, so f U^k sends e_m to f(q^{m-k} y) e_{m-k}.
/// Amplitudes leaving the window are dropped.
///
/// Throws ModelError unless y > 0 lies in the spectrum, K >= 1, and every
/// U-power of `a` has |k| <= K. Base points outside (q,1] give the module of
/// the representative in (q,1] with the splitting index shifted.
Eigen::MatrixXd rep_pi_y(const CrossedElement& a, const Rational& y, int K);
/// N(2K+1) square block matrix, block (i,j) = pi_y(a(i,j)).
Eigen::MatrixXd rep_pi_y(const CrossedMatrix& a, const Rational& y, int K);

/// Diagonal matrix: ev0(a) on indices k > 0, evinf(a) on indices k <= 0.
Eigen::MatrixXd rep_pi0_piinf(const CrossedElement& a, int K);
Eigen::MatrixXd rep_pi0_piinf(const CrossedMatrix& a, int K);

/// Diagonal entries f_0(q^n y) + c for n in [-K, K], without building the
/// matrix; row i corresponds to n = i - K.
std::vector<double> rep_pi_y_diagonal(const CrossedElement& a, const Rational& y, int K);

/// Truncated weighted shift z e_n = q^n y e_{n-1} and the two checks on it.
struct ShiftModelReport {
  int K = 0;
  Rational y;
  /// max |(z z^* - q^2 z^* z)_{ij}| over interior indices, in doubles.
  double relation_residual = 0.0;
  /// Same relation evaluated in exact arithmetic; true iff identically 0.
  bool relation_exact_zero = false;
  /// |z| = sqrt(z^* z) diagonal, exact: entry n is q^n y.
  std::vector<ScaledRational> abs_z_diagonal;
  /// True iff every exact diagonal entry equals q^n y.
  bool abs_z_matches = false;
  /// Max deviation of the double-precision diagonal of sqrt(z^*z) from q^n y.
  double abs_z_float_error = 0.0;
};

Eigen::MatrixXd shift_model_matrix(const Rational& q, const Rational& y, int K);

/// Requires K >= 2.
ShiftModelReport shift_model_check(const Rational& q, const Rational& y, int K);

struct DecayRow {
  int K;
  double tail_norm;  // largest singular value on basis vectors with |index| > K/2
};

/// Largest singular value of pi_y(a) - (pi0 (+) piinf)(a) restricted to the
/// outer part of the window, for each K in `windows`.
std::vector<DecayRow> compactness_decay(const CrossedElement& a, const Rational& y,
                                        const std::vector<int>& windows);

/// True iff the tail norms never increase (within `slack`).
bool is_nonincreasing(const std::vector<DecayRow>& rows, double slack = 1e-12);

}  // namespace qplane
