#include "qplane/crossed.hpp"

#include <algorithm>
#include <cmath>

#include "qplane/errors.hpp"

namespace qplane {

namespace {

void require_same_ambient(const SpectralSet& a, const SpectralSet& b) {
  if (&a != &b && !(a == b)) throw ModelError("crossed-product operands have different ambient spectra");
}

}  // namespace

CrossedElement::CrossedElement(std::shared_ptr<const SpectralSet> ambient)
    : ambient_(std::move(ambient)) {
  if (!ambient_) throw ModelError("crossed element needs an ambient spectrum");
}

CrossedElement CrossedElement::zero(std::shared_ptr<const SpectralSet> ambient) {
  return CrossedElement(std::move(ambient));
}

CrossedElement CrossedElement::unit(std::shared_ptr<const SpectralSet> ambient) {
  CrossedElement e(std::move(ambient));
  e.unital_ = 1;
  return e;
}

CrossedElement CrossedElement::monomial(std::shared_ptr<const SpectralSet> ambient, QFunction f, int k) {
  CrossedElement e(std::move(ambient));
  e.add_term(k, f);
  e.prune();
  return e;
}

CrossedElement CrossedElement::left_unitary(std::shared_ptr<const SpectralSet> ambient, int k, QFunction f) {
  const Rational q = ambient->q();
  return monomial(std::move(ambient), f.alpha_shift(k, q), k);
}

QFunction CrossedElement::coefficient(int k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? QFunction() : it->second;
}

int CrossedElement::max_power() const {
  int m = 0;
  for (const auto& [k, f] : coeffs_) m = std::max(m, std::abs(k));
  return m;
}

void CrossedElement::add_term(int k, const QFunction& f) {
  if (f.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(k, f);
  if (!inserted) it->second = it->second + f;
}

void CrossedElement::prune() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->second.is_zero()) it = coeffs_.erase(it);
    else ++it;
  }
}

CrossedElement CrossedElement::adjoint() const {
  CrossedElement out(ambient_);
  out.unital_ = unital_;
  for (const auto& [k, f] : coeffs_) out.add_term(-k, f.conj().alpha_shift(-k, q()));
  out.prune();
  return out;
}

CrossedElement CrossedElement::scaled(const Rational& c) const {
  CrossedElement out(ambient_);
  out.unital_ = unital_ * c;
  if (c != 0)
    for (const auto& [k, f] : coeffs_) out.add_term(k, f.scaled(c));
  out.prune();
  return out;
}

CrossedElement operator*(const CrossedElement& a, const CrossedElement& b) {
  require_same_ambient(*a.ambient_, *b.ambient_);
  const Rational& q = a.q();
  CrossedElement out(a.ambient_);
  out.unital_ = a.unital_ * b.unital_;
  if (a.unital_ != 0)
    for (const auto& [k, g] : b.coeffs_) out.add_term(k, g.scaled(a.unital_));
  if (b.unital_ != 0)
    for (const auto& [k, f] : a.coeffs_) out.add_term(k, f.scaled(b.unital_));
  for (const auto& [m, f] : a.coeffs_)
    for (const auto& [n, g] : b.coeffs_) out.add_term(m + n, f * g.alpha_shift(m, q));
  out.prune();
  return out;
}

CrossedElement operator+(const CrossedElement& a, const CrossedElement& b) {
  require_same_ambient(*a.ambient_, *b.ambient_);
  CrossedElement out = a;
  out.unital_ += b.unital_;
  for (const auto& [k, g] : b.coeffs_) out.add_term(k, g);
  out.prune();
  return out;
}

CrossedElement operator-(const CrossedElement& a, const CrossedElement& b) {
  return a + b.scaled(Rational(-1));
}

CrossedElement multiply(const CrossedElement& a, const CrossedElement& b) { return a * b; }
CrossedElement adjoint(const CrossedElement& a) { return a.adjoint(); }

bool is_member(const CrossedElement& a, bool unital) {
  if (!unital && a.unital_part() != 0) return false;
  for (const auto& [k, f] : a.coefficients()) {
    if (k != 0 && f.at_zero() != 0.0) return false;
    if (k != 0 || !unital) {
      if (!f.has_infinity_value() || f.at_infinity() != 0.0) return false;
    } else if (!f.has_infinity_value()) {
      return false;
    }
  }
  return true;
}

double ev0(const CrossedElement& a) {
  double s = to_double(a.unital_part());
  for (const auto& [k, f] : a.coefficients()) s += f.at_zero();
  return s;
}

double evinf(const CrossedElement& a) {
  if (!is_member(a, true))
    throw ModelError("evinf needs an element of the unitization (f_k(0) = f_k(inf) = 0 for k != 0)");
  return a.coefficient(0).at_infinity() + to_double(a.unital_part());
}

double sup_distance(const CrossedElement& a, const CrossedElement& b, const SamplingGrid& grid) {
  const CrossedElement d = a - b;
  // The scalar part and a constant U^0 coefficient describe the same thing.
  double m = d.coefficients().count(0) ? 0.0 : std::abs(to_double(d.unital_part()));
  for (const auto& [k, f] : d.coefficients()) {
    const QFunction g = k == 0 ? f + QFunction(StepFunction(d.unital_part())) : f;
    const double s = sup_abs(g, d.q(), grid);
    if (std::isnan(s)) return s;
    m = std::max(m, s);
  }
  return m;
}

// ---------------------------------------------------------------------------
// CrossedMatrix

CrossedMatrix::CrossedMatrix(std::shared_ptr<const SpectralSet> ambient, std::size_t n)
    : ambient_(ambient), n_(n), entries_(n * n, CrossedElement::zero(ambient)) {}

CrossedMatrix::CrossedMatrix(std::shared_ptr<const SpectralSet> ambient, std::size_t n,
                             std::vector<CrossedElement> entries_row_major)
    : ambient_(std::move(ambient)), n_(n), entries_(std::move(entries_row_major)) {
  if (entries_.size() != n * n) throw ModelError("crossed matrix needs n*n entries");
  for (const auto& e : entries_) require_same_ambient(*ambient_, e.ambient());
}

CrossedMatrix CrossedMatrix::identity(std::shared_ptr<const SpectralSet> ambient, std::size_t n) {
  CrossedMatrix m(ambient, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = CrossedElement::unit(ambient);
  return m;
}

CrossedMatrix CrossedMatrix::scalar(const CrossedElement& a) {
  return CrossedMatrix(a.ambient_ptr(), 1, {a});
}

int CrossedMatrix::max_power() const {
  int m = 0;
  for (const auto& e : entries_) m = std::max(m, e.max_power());
  return m;
}

CrossedMatrix CrossedMatrix::adjoint() const {
  CrossedMatrix out(ambient_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out(j, i) = (*this)(i, j).adjoint();
  return out;
}

CrossedMatrix operator*(const CrossedMatrix& a, const CrossedMatrix& b) {
  if (a.n_ != b.n_) throw ModelError("crossed matrix size mismatch");
  require_same_ambient(*a.ambient_, *b.ambient_);
  CrossedMatrix out(a.ambient_, a.n_);
  for (std::size_t i = 0; i < a.n_; ++i)
    for (std::size_t j = 0; j < a.n_; ++j) {
      CrossedElement acc = CrossedElement::zero(a.ambient_);
      for (std::size_t k = 0; k < a.n_; ++k) acc = acc + a(i, k) * b(k, j);
      out(i, j) = std::move(acc);
    }
  return out;
}

CrossedMatrix operator+(const CrossedMatrix& a, const CrossedMatrix& b) {
  if (a.n_ != b.n_) throw ModelError("crossed matrix size mismatch");
  CrossedMatrix out(a.ambient_, a.n_);
  for (std::size_t i = 0; i < a.entries_.size(); ++i) out.entries_[i] = a.entries_[i] + b.entries_[i];
  return out;
}

CrossedMatrix operator-(const CrossedMatrix& a, const CrossedMatrix& b) {
  if (a.n_ != b.n_) throw ModelError("crossed matrix size mismatch");
  CrossedMatrix out(a.ambient_, a.n_);
  for (std::size_t i = 0; i < a.entries_.size(); ++i) out.entries_[i] = a.entries_[i] - b.entries_[i];
  return out;
}

CrossedMatrix direct_sum(const CrossedMatrix& a, const CrossedMatrix& b) {
  require_same_ambient(a.ambient(), b.ambient());
  const std::size_t n = a.size() + b.size();
  CrossedMatrix out(a.ambient_ptr(), n);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out(a.size() + i, a.size() + j) = b(i, j);
  return out;
}

bool is_member(const CrossedMatrix& a, bool unital) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!is_member(a(i, j), unital)) return false;
  return true;
}

Eigen::MatrixXd ev0(const CrossedMatrix& a) {
  Eigen::MatrixXd m(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = ev0(a(i, j));
  return m;
}

Eigen::MatrixXd evinf(const CrossedMatrix& a) {
  Eigen::MatrixXd m(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = evinf(a(i, j));
  return m;
}

double sup_distance(const CrossedMatrix& a, const CrossedMatrix& b, const SamplingGrid& grid) {
  if (a.size() != b.size()) throw ModelError("crossed matrix size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double d = sup_distance(a(i, j), b(i, j), grid);
      if (std::isnan(d)) return d;
      m = std::max(m, d);
    }
  return m;
}

}  // namespace qplane
