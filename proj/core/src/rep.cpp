#include "qplane/rep.hpp"

#include <cmath>

#include "qplane/errors.hpp"

namespace qplane {

namespace {

void check_base_point(const SpectralSet& x, const Rational& y) {
  if (y <= 0 || !x.contains(y))
    throw ModelError("pi_y needs a base point y > 0 in the spectrum, got y = " + to_string(y));
}

// Values f(q^n y) along the orbit n in [-K, K]. Step functions are evaluated
// exactly, but only between the first and last breakpoint; outside that band
// the value is the constant near 0 or at infinity.
std::vector<double> orbit_values(const QFunction& f, const Rational& q, const Rational& y, int K) {
  std::vector<double> out(static_cast<std::size_t>(2 * K + 1));
  if (!f.is_step()) {
    const double qd = to_double(q);
    const double yd = to_double(y);
    for (int n = -K; n <= K; ++n) out[static_cast<std::size_t>(n + K)] = f.evaluate(yd * std::pow(qd, n));
    return out;
  }

  const StepFunction& s = f.step();
  const auto breaks = s.positive_breakpoints();
  const double near_zero = to_double(s.near_zero());
  const double at_inf = to_double(s.at_infinity());
  if (breaks.empty()) {
    std::fill(out.begin(), out.end(), near_zero);
    return out;
  }

  // Smallest n with q^n y < b_first, and largest n with q^n y > b_last.
  const auto first_below = [&](const Rational& b) {
    int n = static_cast<int>(std::floor(std::log(to_double(b) / to_double(y)) / std::log(to_double(q)))) - 2;
    while (!(y * pow(q, n) < b)) ++n;
    while (y * pow(q, n - 1) < b) --n;
    return n;
  };
  const auto last_above = [&](const Rational& b) {
    int n = static_cast<int>(std::ceil(std::log(to_double(b) / to_double(y)) / std::log(to_double(q)))) + 2;
    while (!(y * pow(q, n) > b)) --n;
    while (y * pow(q, n + 1) > b) ++n;
    return n;
  };
  const int below_from = first_below(breaks.front());
  const int above_to = last_above(breaks.back());

  for (int n = -K; n <= K; ++n) {
    double v;
    if (n >= below_from) v = near_zero;
    else if (n <= above_to) v = at_inf;
    else v = to_double(s.value_at(Rational(y * pow(q, n))));
    out[static_cast<std::size_t>(n + K)] = v;
  }
  return out;
}

}  // namespace

Eigen::MatrixXd rep_pi_y(const CrossedElement& a, const Rational& y, int K) {
  check_base_point(a.ambient(), y);
  if (K < 1) throw ModelError("window K must be >= 1");
  if (a.max_power() > K) throw ModelError("U-power exceeds the window");

  const Window w{K};
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(w.dim(), w.dim()) * to_double(a.unital_part());
  for (const auto& [k, f] : a.coefficients()) {
    const auto vals = orbit_values(f, a.q(), y, K);
    // f U^k : e_col -> f(q^{col-k} y) e_{col-k}
    for (int col = -K; col <= K; ++col) {
      const int row = col - k;
      if (!w.contains(row)) continue;
      m(w.row(row), w.row(col)) += vals[static_cast<std::size_t>(w.row(row))];
    }
  }
  return m;
}

Eigen::MatrixXd rep_pi_y(const CrossedMatrix& a, const Rational& y, int K) {
  const int d = 2 * K + 1;
  const auto n = static_cast<int>(a.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n * d, n * d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.block(i * d, j * d, d, d) = rep_pi_y(a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)), y, K);
  return m;
}

Eigen::MatrixXd rep_pi0_piinf(const CrossedElement& a, int K) {
  if (K < 1) throw ModelError("window K must be >= 1");
  const Window w{K};
  const double at0 = ev0(a);
  const double atinf = evinf(a);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(w.dim(), w.dim());
  for (int n = -K; n <= K; ++n) m(w.row(n), w.row(n)) = n > 0 ? at0 : atinf;
  return m;
}

Eigen::MatrixXd rep_pi0_piinf(const CrossedMatrix& a, int K) {
  const int d = 2 * K + 1;
  const auto n = static_cast<int>(a.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n * d, n * d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.block(i * d, j * d, d, d) = rep_pi0_piinf(a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)), K);
  return m;
}

std::vector<double> rep_pi_y_diagonal(const CrossedElement& a, const Rational& y, int K) {
  check_base_point(a.ambient(), y);
  std::vector<double> diag(static_cast<std::size_t>(2 * K + 1), to_double(a.unital_part()));
  auto it = a.coefficients().find(0);
  if (it == a.coefficients().end()) return diag;
  const auto vals = orbit_values(it->second, a.q(), y, K);
  for (std::size_t i = 0; i < diag.size(); ++i) diag[i] += vals[i];
  return diag;
}

Eigen::MatrixXd shift_model_matrix(const Rational& q, const Rational& y, int K) {
  const Window w{K};
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(w.dim(), w.dim());
  for (int n = -K + 1; n <= K; ++n) z(w.row(n - 1), w.row(n)) = ScaledRational{y, n}.to_double(q);
  return z;
}

ShiftModelReport shift_model_check(const Rational& q, const Rational& y, int K) {
  if (K < 2) throw ModelError("shift model check needs K >= 2");
  const Window w{K};
  ShiftModelReport rep;
  rep.K = K;
  rep.y = y;

  // Floating-point route: dense products of the truncated shift.
  const Eigen::MatrixXd z = shift_model_matrix(q, y, K);
  const Eigen::MatrixXd zzs = z * z.transpose();
  const Eigen::MatrixXd zsz = z.transpose() * z;
  const double q2 = to_double(q * q);
  double worst = 0.0;
  for (int i = -K + 1; i <= K - 1; ++i)
    for (int j = -K + 1; j <= K - 1; ++j) {
      const double lhs = zzs(w.row(i), w.row(j));
      const double rhs = q2 * zsz(w.row(i), w.row(j));
      const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
      const double r = std::abs(lhs - rhs);
      if (r != 0.0) worst = std::max(worst, r / scale);
    }
  rep.relation_residual = worst;

  // Exact route on the weights w_n = q^n y: (z z^*)_{nn} = w_{n+1}^2 and
  // (z^* z)_{nn} = w_n^2, all other entries vanish.
  rep.relation_exact_zero = true;
  rep.abs_z_matches = true;
  for (int n = -K + 1; n <= K - 1; ++n) {
    const ScaledRational w_next{y, n + 1};
    const ScaledRational w_n{y, n};
    const ScaledRational lhs = w_next * w_next;
    const ScaledRational rhs = (w_n * w_n).times_q(2);
    if (compare(lhs, rhs, q) != 0) rep.relation_exact_zero = false;
  }
  double float_err = 0.0;
  for (int n = -K + 1; n <= K; ++n) {
    const ScaledRational w_n{y, n};
    const ScaledRational sq = w_n * w_n;  // (z^* z)_{nn}
    Rational root;
    if (sq.m % 2 != 0 || !exact_sqrt(sq.r, root)) {
      rep.abs_z_matches = false;
      continue;
    }
    const ScaledRational abs_entry{root, sq.m / 2};
    rep.abs_z_diagonal.push_back(abs_entry);
    if (compare(abs_entry, w_n, q) != 0) rep.abs_z_matches = false;

    const double approx = std::sqrt(zsz(w.row(n), w.row(n)));
    const double expect = w_n.to_double(q);
    float_err = std::max(float_err, std::abs(approx - expect) / expect);
  }
  rep.abs_z_float_error = float_err;
  return rep;
}

std::vector<DecayRow> compactness_decay(const CrossedElement& a, const Rational& y,
                                        const std::vector<int>& windows) {
  std::vector<DecayRow> rows;
  for (int K : windows) {
    const Eigen::MatrixXd d = rep_pi_y(a, y, K) - rep_pi0_piinf(a, K);
    std::vector<int> outer;
    for (int n = -K; n <= K; ++n)
      if (2 * std::abs(n) > K) outer.push_back(n + K);
    Eigen::MatrixXd sub(outer.size(), outer.size());
    for (std::size_t i = 0; i < outer.size(); ++i)
      for (std::size_t j = 0; j < outer.size(); ++j) sub(i, j) = d(outer[i], outer[j]);
    const double norm = sub.size() == 0 ? 0.0 : Eigen::JacobiSVD<Eigen::MatrixXd>(sub).singularValues()(0);
    rows.push_back({K, norm});
  }
  return rows;
}

bool is_nonincreasing(const std::vector<DecayRow>& rows, double slack) {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].tail_norm > rows[i - 1].tail_norm + slack) return false;
  return true;
}

}  // namespace qplane
