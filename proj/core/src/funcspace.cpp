#include "qplane/funcspace.hpp"

#include <algorithm>
#include <cmath>

#include "qplane/errors.hpp"

namespace qplane {

// ---------------------------------------------------------------------------
// StepFunction

StepFunction::StepFunction(Rational constant)
    : breaks_{Rational(0)}, point_{constant}, open_{constant} {}

StepFunction StepFunction::indicator(const Rational& lo, bool lo_closed,
                                     const std::optional<Rational>& hi, bool hi_closed,
                                     const Rational& value) {
  if (lo < 0) throw ModelError("indicator interval starts below 0");
  if (hi && *hi < lo) throw ModelError("indicator interval is reversed");

  StepFunction f;
  if (hi && *hi == lo) {
    // Degenerate: a single point, or empty unless both ends are closed.
    if (!(lo_closed && hi_closed)) return f;
    if (lo == 0) {
      f.point_[0] = value;
    } else {
      f.breaks_.push_back(lo);
      f.point_.push_back(value);
      f.open_.push_back(Rational(0));
    }
    f.normalize();
    return f;
  }

  if (lo == 0) {
    f.point_[0] = lo_closed ? value : Rational(0);
    f.open_[0] = value;
  } else {
    f.breaks_.push_back(lo);
    f.point_.push_back(lo_closed ? value : Rational(0));
    f.open_.push_back(value);
  }
  if (hi) {
    f.breaks_.push_back(*hi);
    f.point_.push_back(hi_closed ? value : Rational(0));
    f.open_.push_back(Rational(0));
  }
  f.normalize();
  return f;
}

std::size_t StepFunction::locate(const Rational& t) const {
  // Largest i with breaks_[i] <= t.
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  return static_cast<std::size_t>(std::distance(breaks_.begin(), it)) - 1;
}

Rational StepFunction::value_at(const Rational& t) const {
  if (t < 0) throw ModelError("step function evaluated at negative t");
  const std::size_t i = locate(t);
  return breaks_[i] == t ? point_[i] : open_[i];
}

double StepFunction::value_at(double t) const {
  if (t < 0) throw ModelError("step function evaluated at negative t");
  if (std::isinf(t)) return to_double(at_infinity());
  return to_double(value_at(Rational(t)));
}

std::vector<StepPiece> StepFunction::pieces() const {
  std::vector<StepPiece> out;
  for (std::size_t i = 0; i < breaks_.size(); ++i) {
    if (point_[i] != 0) out.push_back({breaks_[i], true, breaks_[i], true, point_[i]});
    if (open_[i] != 0) {
      std::optional<Rational> hi;
      if (i + 1 < breaks_.size()) hi = breaks_[i + 1];
      out.push_back({breaks_[i], false, hi, false, open_[i]});
    }
  }
  // Fuse point pieces into adjacent open pieces of equal value.
  std::vector<StepPiece> fused;
  for (auto& p : out) {
    if (!fused.empty()) {
      auto& b = fused.back();
      if (b.value == p.value && b.hi && *b.hi == p.lo && (b.hi_closed != p.lo_closed)) {
        b.hi = p.hi;
        b.hi_closed = p.hi_closed;
        continue;
      }
    }
    fused.push_back(std::move(p));
  }
  return fused;
}

StepFunction StepFunction::alpha_shift(int m, const Rational& q) const {
  if (m == 0) return *this;
  const Rational factor = pow(q, -m);
  StepFunction g = *this;
  for (std::size_t i = 1; i < g.breaks_.size(); ++i) g.breaks_[i] *= factor;
  return g;
}

bool StepFunction::is_zero() const {
  return breaks_.size() == 1 && point_[0] == 0 && open_[0] == 0;
}

StepFunction StepFunction::scaled(const Rational& c) const {
  StepFunction g = *this;
  for (auto& v : g.point_) v *= c;
  for (auto& v : g.open_) v *= c;
  g.normalize();
  return g;
}

template <typename Op>
StepFunction StepFunction::combine(const StepFunction& a, const StepFunction& b, Op op) {
  std::vector<Rational> merged;
  merged.reserve(a.breaks_.size() + b.breaks_.size());
  std::merge(a.breaks_.begin(), a.breaks_.end(), b.breaks_.begin(), b.breaks_.end(),
             std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

  StepFunction out;
  out.breaks_ = merged;
  out.point_.clear();
  out.open_.clear();
  for (const auto& t : merged) {
    const std::size_t ia = a.locate(t);
    const std::size_t ib = b.locate(t);
    const Rational& pa = a.breaks_[ia] == t ? a.point_[ia] : a.open_[ia];
    const Rational& pb = b.breaks_[ib] == t ? b.point_[ib] : b.open_[ib];
    out.point_.push_back(op(pa, pb));
    out.open_.push_back(op(a.open_[ia], b.open_[ib]));
  }
  out.normalize();
  return out;
}

StepFunction operator+(const StepFunction& a, const StepFunction& b) {
  return StepFunction::combine(a, b, [](const Rational& x, const Rational& y) { return Rational(x + y); });
}

StepFunction operator-(const StepFunction& a, const StepFunction& b) {
  return StepFunction::combine(a, b, [](const Rational& x, const Rational& y) { return Rational(x - y); });
}

StepFunction operator*(const StepFunction& a, const StepFunction& b) {
  return StepFunction::combine(a, b, [](const Rational& x, const Rational& y) { return Rational(x * y); });
}

void StepFunction::normalize() {
  std::vector<Rational> nb{breaks_[0]};
  std::vector<Rational> np{point_[0]};
  std::vector<Rational> no{open_[0]};
  for (std::size_t i = 1; i < breaks_.size(); ++i) {
    // A breakpoint is redundant when the function is constant across it.
    if (point_[i] == no.back() && open_[i] == no.back()) continue;
    nb.push_back(breaks_[i]);
    np.push_back(point_[i]);
    no.push_back(open_[i]);
  }
  breaks_ = std::move(nb);
  point_ = std::move(np);
  open_ = std::move(no);
}

// ---------------------------------------------------------------------------
// SmoothFunction

SmoothFunction::SmoothFunction(Evaluator f, double at_zero, std::optional<double> at_infinity,
                               std::optional<Support> support)
    : base_(std::make_shared<const Evaluator>(std::move(f))),
      at_zero_(at_zero),
      at_infinity_(at_infinity),
      base_support_(support) {
  if (support) {
    at_zero_ = support->lo > 0 || support->empty() ? 0.0 : at_zero_;
    at_infinity_ = 0.0;
  }
}

double SmoothFunction::operator()(double t) const {
  if (t < 0) throw ModelError("smooth function evaluated at negative t");
  if (t == 0) return at_zero_;
  if (std::isinf(t)) {
    if (!at_infinity_) throw ModelError("no declared value at infinity");
    return *at_infinity_;
  }
  const double s = shift_ == 0 ? t : scale_ * t;
  if (base_support_ && (base_support_->empty() || s < base_support_->lo || s > base_support_->hi))
    return 0.0;
  return (*base_)(s);
}

std::optional<Support> SmoothFunction::support() const {
  if (!base_support_) return std::nullopt;
  if (base_support_->empty()) return base_support_;
  return Support{base_support_->lo / scale_, base_support_->hi / scale_};
}

SmoothFunction SmoothFunction::alpha_shift(int m, const Rational& q) const {
  if (m == 0) return *this;
  SmoothFunction g = *this;
  g.shift_ += m;
  g.scale_ = g.shift_ == 0 ? 1.0 : std::pow(to_double(q), g.shift_);
  return g;
}

SmoothFunction SmoothFunction::scaled(double c) const {
  SmoothFunction self = *this;
  std::optional<double> inf;
  if (at_infinity_) inf = c * *at_infinity_;
  if (c == 0) return SmoothFunction([](double) { return 0.0; }, 0.0, 0.0, Support{1.0, 0.0});
  return SmoothFunction([self, c](double t) { return c * self(t); }, c * at_zero_, inf, support());
}

bool SmoothFunction::is_zero() const { return base_support_ && base_support_->empty(); }

namespace {

std::optional<double> combine_inf(const std::optional<double>& a, const std::optional<double>& b,
                                  double (*op)(double, double)) {
  if (!a || !b) return std::nullopt;
  return op(*a, *b);
}

}  // namespace

SmoothFunction operator+(const SmoothFunction& a, const SmoothFunction& b) {
  std::optional<Support> sup;
  const auto sa = a.support();
  const auto sb = b.support();
  if (sa && sb) {
    if (sa->empty()) sup = sb;
    else if (sb->empty()) sup = sa;
    else sup = Support{std::min(sa->lo, sb->lo), std::max(sa->hi, sb->hi)};
  }
  auto inf = combine_inf(a.at_infinity(), b.at_infinity(), [](double x, double y) { return x + y; });
  return SmoothFunction([a, b](double t) { return a(t) + b(t); }, a.at_zero() + b.at_zero(), inf, sup);
}

SmoothFunction operator*(const SmoothFunction& a, const SmoothFunction& b) {
  std::optional<Support> sup;
  const auto sa = a.support();
  const auto sb = b.support();
  if (sa && sb) {
    sup = Support{std::max(sa->lo, sb->lo), std::min(sa->hi, sb->hi)};
  } else if (sa) {
    sup = sa;
  } else if (sb) {
    sup = sb;
  }
  auto inf = combine_inf(a.at_infinity(), b.at_infinity(), [](double x, double y) { return x * y; });
  if (sup) inf = 0.0;
  return SmoothFunction([a, b](double t) { return a(t) * b(t); }, a.at_zero() * b.at_zero(), inf, sup);
}

// ---------------------------------------------------------------------------
// QFunction

namespace {

SmoothFunction as_smooth(const StepFunction& f) {
  const auto positives = f.positive_breakpoints();
  std::vector<double> breaks{0.0};
  std::vector<double> point{to_double(f.at_zero())};
  std::vector<double> open{to_double(f.near_zero())};
  for (std::size_t i = 0; i < positives.size(); ++i) {
    const Rational& b = positives[i];
    const Rational probe = i + 1 < positives.size() ? Rational((b + positives[i + 1]) / 2) : Rational(b + 1);
    breaks.push_back(to_double(b));
    point.push_back(to_double(f.value_at(b)));
    open.push_back(to_double(f.value_at(probe)));
  }

  auto eval = [breaks, point, open](double t) {
    auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
    const auto i = static_cast<std::size_t>(std::distance(breaks.begin(), it)) - 1;
    return breaks[i] == t ? point[i] : open[i];
  };

  std::optional<Support> sup;
  if (f.is_zero()) {
    sup = Support{1.0, 0.0};
  } else if (f.at_zero() == 0 && f.near_zero() == 0 && f.at_infinity() == 0) {
    sup = Support{breaks[1], breaks.back()};
  }
  return SmoothFunction(eval, point[0], to_double(f.at_infinity()), sup);
}

}  // namespace

double QFunction::evaluate(double t) const {
  if (t < 0) throw ModelError("function evaluated at negative t");
  return std::visit([t](const auto& f) -> double {
    if constexpr (std::is_same_v<std::decay_t<decltype(f)>, StepFunction>) return f.value_at(t);
    else return f(t);
  }, impl_);
}

double QFunction::evaluate(const Rational& t) const {
  if (t < 0) throw ModelError("function evaluated at negative t");
  if (is_step()) return to_double(step().value_at(t));
  return smooth()(to_double(t));
}

double QFunction::at_zero() const {
  return is_step() ? to_double(step().at_zero()) : smooth().at_zero();
}

double QFunction::at_infinity() const {
  if (is_step()) return to_double(step().at_infinity());
  auto v = smooth().at_infinity();
  if (!v) throw ModelError("undefined limit at infinity (no declared value)");
  return *v;
}

bool QFunction::has_infinity_value() const {
  return is_step() || smooth().at_infinity().has_value();
}

bool QFunction::is_zero() const { return is_step() ? step().is_zero() : smooth().is_zero(); }

std::optional<Support> QFunction::active_region() const {
  if (is_step()) {
    const auto& f = step();
    if (f.near_zero() != f.at_zero()) return std::nullopt;
    const auto b = f.positive_breakpoints();
    if (b.empty()) return Support{1.0, 0.0};
    return Support{to_double(b.front()), to_double(b.back())};
  }
  return smooth().support();
}

QFunction QFunction::alpha_shift(int m, const Rational& q) const {
  return std::visit([&](const auto& f) -> QFunction { return f.alpha_shift(m, q); }, impl_);
}

QFunction QFunction::scaled(const Rational& c) const {
  if (is_step()) return step().scaled(c);
  return smooth().scaled(to_double(c));
}

QFunction operator+(const QFunction& a, const QFunction& b) {
  if (a.is_step() && b.is_step()) return a.step() + b.step();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const SmoothFunction sa = a.is_step() ? as_smooth(a.step()) : a.smooth();
  const SmoothFunction sb = b.is_step() ? as_smooth(b.step()) : b.smooth();
  return sa + sb;
}

QFunction operator*(const QFunction& a, const QFunction& b) {
  if (a.is_step() && b.is_step()) return a.step() * b.step();
  if (a.is_zero() || b.is_zero()) return StepFunction();
  const SmoothFunction sa = a.is_step() ? as_smooth(a.step()) : a.smooth();
  const SmoothFunction sb = b.is_step() ? as_smooth(b.step()) : b.smooth();
  SmoothFunction p = sa * sb;
  if (p.is_zero()) return StepFunction();
  return p;
}

QFunction operator-(const QFunction& a, const QFunction& b) { return a + b.scaled(Rational(-1)); }

QFunction alpha_shift(const QFunction& f, int m, const Rational& q) { return f.alpha_shift(m, q); }

std::vector<double> grid_points(const Rational& q, const SamplingGrid& grid) {
  const double qd = to_double(q);
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(grid.k_max - grid.k_min + 1) * grid.density + 1);
  pts.push_back(0.0);
  for (int j = grid.k_max; j >= grid.k_min; --j) {
    const double scale = std::pow(qd, j);
    for (int i = 1; i <= grid.density; ++i)
      pts.push_back(scale * (qd + (1.0 - qd) * static_cast<double>(i) / grid.density));
  }
  return pts;
}

double sup_abs(const QFunction& f, const Rational& q, const SamplingGrid& grid) {
  if (f.is_step()) {
    // Exact: the sup of a step function is the largest |value| it takes.
    double m = 0.0;
    for (const auto& p : f.step().pieces()) m = std::max(m, std::abs(to_double(p.value)));
    return m;
  }
  const auto& s = f.smooth();
  if (s.is_zero()) return 0.0;
  double m = std::abs(s.at_zero());
  if (auto inf = s.at_infinity()) m = std::max(m, std::abs(*inf));
  const auto sup = s.support();
  for (double t : grid_points(q, grid)) {
    if (sup && (t < sup->lo || t > sup->hi)) continue;
    const double v = std::abs(s(t));
    if (std::isnan(v)) return v;
    m = std::max(m, v);
  }
  return m;
}

bool approx_equal(const QFunction& a, const QFunction& b, const Rational& q,
                  const SamplingGrid& grid, double tol) {
  if (a.is_step() && b.is_step()) return a.step() == b.step();
  return sup_abs(a - b, q, grid) <= tol;
}

// ---------------------------------------------------------------------------
// Bump functions

BumpFunctions bump_phi_h_fn(const Rational& q_exact, int n) {
  if (n <= 0) throw ModelError("bump functions need n >= 1, got " + std::to_string(n));
  const double q = to_double(q_exact);

  auto phi = [q](double t) {
    if (t <= q) return 0.0;
    if (t >= 1.0) return 1.0;
    return (t - q) / (1.0 - q);
  };
  auto h = [phi, q](double t) {
    if (t < q || t > 1.0) return 0.0;
    const double p = phi(t);
    return std::sqrt(std::max(0.0, p * (1.0 - p)));
  };
  const double qn = std::pow(q, n);
  const double upper = 1.0 / qn;          // q^{-n}
  const double middle = q / qn;           // q^{-n+1}
  auto f_n = [phi, q, qn, upper, middle](double t) {
    if (t < q || t > upper) return 0.0;
    if (t <= 1.0) return phi(t);
    if (t < middle) return 1.0;
    return 1.0 - phi(qn * t);
  };

  return BumpFunctions{
      SmoothFunction(phi, 0.0, 1.0),
      SmoothFunction(h, 0.0, 0.0, Support{q, 1.0}),
      SmoothFunction(f_n, 0.0, 0.0, Support{q, upper}),
  };
}

}  // namespace qplane
