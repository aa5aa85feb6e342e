#include "qplane/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "qplane/errors.hpp"
#include "qplane/rep.hpp"

namespace qplane {

std::string KHomClass::label() const {
  switch (kind) {
    case Kind::Ev0: return "ev0";
    case Kind::EvInf: return "evinf";
    case Kind::Fredholm:
      if (component >= 0) return "F_" + std::to_string(component) + "(y=" + to_string(y) + ")";
      return "F(y=" + to_string(y) + ")";
  }
  return "?";
}

namespace {

struct KahanSum {
  double sum = 0.0;
  double c = 0.0;

  void add(double v) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// Diagonal entry of p with its two classical values, which replace it on
// indices n > 0 (ev0) and n <= 0 (evinf).
struct DiagonalEntry {
  const CrossedElement* e;
  double at0;
  double atinf;
};

std::vector<DiagonalEntry> diagonal_entries(const CrossedMatrix& p) {
  if (!is_member(p, true)) throw ModelError("pairing needs a matrix over the unitization");
  std::vector<DiagonalEntry> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const CrossedElement& e = p(i, i);
    out.push_back({&e, ev0(e), evinf(e)});
  }
  return out;
}

double truncated_trace(const std::vector<DiagonalEntry>& diag, const Rational& y, int K) {
  KahanSum acc;
  for (const auto& d : diag) {
    const auto vals = rep_pi_y_diagonal(*d.e, y, K);
    for (int n = -K; n <= K; ++n) acc.add(vals[static_cast<std::size_t>(n + K)] - (n > 0 ? d.at0 : d.atinf));
  }
  return acc.sum;
}

// Smallest window outside which every summand vanishes identically, or
// nullopt when some diagonal difference is not finitely supported.
std::optional<int> exact_window(const std::vector<DiagonalEntry>& diag, const Rational& q, const Rational& y) {
  const double lq = std::log(to_double(q));
  const double yd = to_double(y);
  int need = 1;
  for (const auto& d : diag) {
    const QFunction f = d.e->coefficient(0);
    if (f.is_zero()) continue;
    const auto region = f.active_region();
    if (!region) return std::nullopt;
    if (region->empty()) continue;
    if (!(region->lo > 0.0) || !std::isfinite(region->hi)) return std::nullopt;
    // n > 0 contributes only while q^n y >= lo; n <= 0 only while q^n y <= hi.
    const double top = std::ceil(std::log(region->lo / yd) / lq) + 2;
    const double bottom = std::floor(std::log(region->hi / yd) / lq) - 2;
    const double reach = std::max(top, -bottom);
    if (reach > std::numeric_limits<int>::max() / 4) return std::nullopt;
    need = std::max(need, static_cast<int>(reach));
  }
  return need;
}

PairingResult finish(double raw, int window, bool exact, double integer_tol) {
  PairingResult r;
  r.raw = raw;
  r.rounded = std::lround(raw);
  r.residual = std::abs(raw - static_cast<double>(r.rounded));
  r.window_used = window;
  r.exact = exact;
  r.integral = r.residual <= integer_tol;
  return r;
}

PairingResult pair_fredholm(const Rational& y, const CrossedMatrix& p, const PairingOptions& opt) {
  if (opt.initial_window < 1 || opt.max_window < opt.initial_window)
    throw ModelError("pairing windows must satisfy 1 <= initial_window <= max_window");
  const auto diag = diagonal_entries(p);
  const Rational& q = p.ambient().q();

  if (const auto need = exact_window(diag, q, y); need && *need <= opt.max_window) {
    const int K = std::max(opt.initial_window, *need);
    return finish(truncated_trace(diag, y, K), K, true, opt.integer_tol);
  }

  int K = opt.initial_window;
  double before = std::numeric_limits<double>::quiet_NaN();
  double prev = truncated_trace(diag, y, K);
  while (true) {
    const int K2 = 2 * K;
    if (K2 > opt.max_window)
      throw NonConvergence("trace did not settle within max window " + std::to_string(opt.max_window), before, prev, K);
    const double next = truncated_trace(diag, y, K2);
    if (std::abs(next - prev) < opt.tol) return finish(next, K2, false, opt.integer_tol);
    before = prev;
    prev = next;
    K = K2;
  }
}

}  // namespace

double fredholm_trace(const CrossedMatrix& p, const Rational& y, int K) {
  return truncated_trace(diagonal_entries(p), y, K);
}

PairingResult pair(const KHomClass& f, const CrossedMatrix& p, const PairingOptions& options) {
  switch (f.kind) {
    case KHomClass::Kind::Ev0: return finish(ev0(p).trace(), 0, true, options.integer_tol);
    case KHomClass::Kind::EvInf:
      if (!is_member(p, true)) throw ModelError("evinf pairing needs a matrix over the unitization");
      return finish(evinf(p).trace(), 0, true, options.integer_tol);
    case KHomClass::Kind::Fredholm: return pair_fredholm(f.y, p, options);
  }
  throw ModelError("unknown K-homology class");
}

std::vector<KHomClass> homology_family(const SpectralSet& x) {
  return homology_family(x, (x.q() + 1) / 2);
}

std::vector<KHomClass> homology_family(const SpectralSet& x, const Rational& full_y) {
  std::vector<KHomClass> fam{KHomClass::ev0()};
  if (x.is_full()) {
    if (full_y <= 0) throw ModelError("base point must be positive");
    fam.push_back(KHomClass::fredholm(full_y, 0));
  } else {
    const auto g = gap_structure(x);
    for (std::size_t i = 0; i < g.components.size(); ++i)
      fam.push_back(KHomClass::fredholm(g.components[i].witness, static_cast<int>(i)));
  }
  fam.push_back(KHomClass::evinf());
  return fam;
}

std::vector<PairingResult> pairing_vector(const CrossedMatrix& p, const std::vector<KHomClass>& family,
                                          const PairingOptions& options) {
  std::vector<PairingResult> out;
  out.reserve(family.size());
  for (const auto& f : family) out.push_back(pair(f, p, options));
  return out;
}

std::vector<PairingResult> pairing_vector(const CrossedMatrix& p, const GapStructure& g,
                                          const PairingOptions& options) {
  std::vector<KHomClass> fam{KHomClass::ev0()};
  for (std::size_t i = 0; i < g.components.size(); ++i)
    fam.push_back(KHomClass::fredholm(g.components[i].witness, static_cast<int>(i)));
  fam.push_back(KHomClass::evinf());
  return pairing_vector(p, fam, options);
}

std::vector<std::vector<PairingResult>> pairing_table(const std::vector<CrossedMatrix>& rows,
                                                      const std::vector<KHomClass>& family,
                                                      const PairingOptions& options) {
  std::vector<std::future<std::vector<PairingResult>>> jobs;
  jobs.reserve(rows.size());
  for (const auto& p : rows)
    jobs.push_back(std::async(std::launch::async, [&p, &family, &options] {
      return pairing_vector(p, family, options);
    }));
  std::vector<std::vector<PairingResult>> out;
  out.reserve(rows.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

TelescopingReport telescoping_check(int n, const Rational& y, const Rational& q, int K) {
  if (n < 1) throw ModelError("telescoping_check needs n >= 1");
  if (q <= 0 || q >= 1) throw ModelError("q must lie in (0,1)");
  if (y <= q || y > 1) throw ModelError("telescoping_check needs y in (q,1]");
  if (K < n) throw ModelError("telescoping_check needs K >= n");

  const double qd = to_double(q);
  const double y2n = std::pow(to_double(y), 2 * n);
  // x(e) = q^e y^{2n}; the P_n diagonal at t = q^k y uses
  // s_- = x(-n^2+n+2nk) and s_+ = x(n^2+n+2nk).
  const auto x = [&](long e) { return std::pow(qd, static_cast<double>(e)) * y2n; };
  const auto rising = [](double s) { return std::isinf(s) ? 1.0 : s / (1.0 + s); };
  const auto falling = [](double s) { return std::isinf(s) ? 0.0 : 1.0 / (1.0 + s); };
  const long nn = n;
  const auto e_minus = [&](long k) { return -nn * nn + nn + 2 * nn * k; };
  const auto e_plus = [&](long k) { return nn * nn + nn + 2 * nn * k; };

  const auto term = [&](long k) { return rising(x(e_minus(k))) + falling(x(e_plus(k))) - 1.0; };
  const auto term_neg = [&](long k) { return rising(x(e_plus(k))) + falling(x(e_minus(k))) - 1.0; };

  TelescopingReport r;
  r.n = n;
  r.K = K;

  KahanSum direct, negative;
  double mismatch = 0.0;
  for (long k = -K; k <= K; ++k) {
    const double t = term(k);
    const double tn = term_neg(k);
    direct.add(t);
    negative.add(tn);
    mismatch = std::max(mismatch, std::abs(t + tn));
  }
  r.direct = direct.sum;
  r.negative_direct = negative.sum;
  r.negative_term_mismatch = mismatch;

  KahanSum closed;
  for (long k = 0; k < n; ++k) {
    const double xk = x(e_minus(k));
    closed.add(rising(xk) + falling(xk));
  }
  r.closed_form = closed.sum;
  r.difference = std::abs(r.direct - r.closed_form);

  // Each term is f(s_-) - f(s_+) with f(s) = s/(1+s); it lies in [0, s_-]
  // for k > 0 and in [0, 1/s_+] for k < 0, both geometric in k.
  const double ratio = std::pow(qd, 2 * n);
  r.tail_bound = (x(e_minus(K + 1)) + 1.0 / x(e_plus(-K - 1))) / (1.0 - ratio);

  // k -> n+k: sum_{k=0}^{K} s_-/(1+s_-) splits into its first n terms plus
  // sum_{k=0}^{K-n} s_+/(1+s_+).
  KahanSum lhs1, rhs1;
  for (long k = 0; k <= K; ++k) lhs1.add(rising(x(e_minus(k))));
  for (long k = 0; k < n; ++k) rhs1.add(rising(x(e_minus(k))));
  for (long k = 0; k <= K - n; ++k) rhs1.add(rising(x(e_plus(k))));
  r.shift_sum1_error = std::abs(lhs1.sum - rhs1.sum);

  // k -> k-n on the other half: sum_{k=-K}^{-1} 1/(1+s_+) equals
  // sum_{k=-K+n}^{n-1} 1/(1+s_-).
  KahanSum lhs2, rhs2;
  for (long k = -K; k <= -1; ++k) lhs2.add(falling(x(e_plus(k))));
  for (long k = -K + n; k <= n - 1; ++k) rhs2.add(falling(x(e_minus(k))));
  r.shift_sum2_error = std::abs(lhs2.sum - rhs2.sum);
  return r;
}

}  // namespace qplane
