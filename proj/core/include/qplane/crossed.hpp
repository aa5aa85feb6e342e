#pragma once

#include <map>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "qplane/funcspace.hpp"
#include "qplane/spectral.hpp"

namespace qplane {

/// A finite sum c*1 + sum_k f_k U^k in the (unitized) crossed product
/// C_0(X) x| Z, always stored with coefficients to the left of U-powers.
///
/// Covariance convention: U f U^* = alpha_q(f), so
///   (f U^m)(g U^n) = f * alpha_q^m(g) * U^{m+n},
///   (f U^n)^*      = alpha_q^{-n}(conj f) * U^{-n}.
/// This is the convention under which pi_y(U) e_n = e_{n-1} together with
/// pi_y(f) e_n = f(q^n y) e_n is a representation.
class CrossedElement {
 public:
  using Coefficients = std::map<int, QFunction>;

  explicit CrossedElement(std::shared_ptr<const SpectralSet> ambient);

  static CrossedElement zero(std::shared_ptr<const SpectralSet> ambient);
  static CrossedElement unit(std::shared_ptr<const SpectralSet> ambient);
  /// f U^k, already in normal form.
  static CrossedElement monomial(std::shared_ptr<const SpectralSet> ambient, QFunction f, int k);
  /// U^k f, normalized to alpha_q^k(f) U^k.
  static CrossedElement left_unitary(std::shared_ptr<const SpectralSet> ambient, int k, QFunction f);

  const SpectralSet& ambient() const { return *ambient_; }
  const std::shared_ptr<const SpectralSet>& ambient_ptr() const { return ambient_; }
  const Rational& q() const { return ambient_->q(); }

  const Coefficients& coefficients() const { return coeffs_; }
  /// Zero function when k is not in the support.
  QFunction coefficient(int k) const;
  const Rational& unital_part() const { return unital_; }

  /// Largest |k| carrying a nonzero coefficient (0 when none).
  int max_power() const;

  CrossedElement adjoint() const;
  CrossedElement scaled(const Rational& c) const;

  /// Throws ModelError on ambient mismatch.
  friend CrossedElement operator*(const CrossedElement& a, const CrossedElement& b);
  friend CrossedElement operator+(const CrossedElement& a, const CrossedElement& b);
  friend CrossedElement operator-(const CrossedElement& a, const CrossedElement& b);

 private:
  void add_term(int k, const QFunction& f);
  void prune();

  std::shared_ptr<const SpectralSet> ambient_;
  Coefficients coeffs_;
  Rational unital_{0};
};

CrossedElement multiply(const CrossedElement& a, const CrossedElement& b);
CrossedElement adjoint(const CrossedElement& a);

/// Membership in C*_0(z,z*) (unital = false) or in its unitization.
bool is_member(const CrossedElement& a, bool unital);

/// sum_k f_k(0) + c.
double ev0(const CrossedElement& a);
/// f_0(inf) + c. Throws ModelError if `a` is not in the unitization or the
/// limit at infinity is undeclared.
double evinf(const CrossedElement& a);

/// Sup-norm distance of every coefficient and the unital part, using the
/// funcspace sampling policy. Exact (0 or the true gap) on step functions.
double sup_distance(const CrossedElement& a, const CrossedElement& b, const SamplingGrid& grid = {});

/// N x N matrix over the crossed product; all entries share one ambient.
class CrossedMatrix {
 public:
  CrossedMatrix(std::shared_ptr<const SpectralSet> ambient, std::size_t n);
  CrossedMatrix(std::shared_ptr<const SpectralSet> ambient, std::size_t n,
                std::vector<CrossedElement> entries_row_major);

  static CrossedMatrix identity(std::shared_ptr<const SpectralSet> ambient, std::size_t n);
  static CrossedMatrix scalar(const CrossedElement& a);

  std::size_t size() const { return n_; }
  const SpectralSet& ambient() const { return *ambient_; }
  const std::shared_ptr<const SpectralSet>& ambient_ptr() const { return ambient_; }

  const CrossedElement& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  CrossedElement& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }

  int max_power() const;

  CrossedMatrix adjoint() const;

  friend CrossedMatrix operator*(const CrossedMatrix& a, const CrossedMatrix& b);
  friend CrossedMatrix operator+(const CrossedMatrix& a, const CrossedMatrix& b);
  friend CrossedMatrix operator-(const CrossedMatrix& a, const CrossedMatrix& b);

 private:
  std::shared_ptr<const SpectralSet> ambient_;
  std::size_t n_;
  std::vector<CrossedElement> entries_;
};

/// Block-diagonal a (+) b.
CrossedMatrix direct_sum(const CrossedMatrix& a, const CrossedMatrix& b);

bool is_member(const CrossedMatrix& a, bool unital);
Eigen::MatrixXd ev0(const CrossedMatrix& a);
Eigen::MatrixXd evinf(const CrossedMatrix& a);
double sup_distance(const CrossedMatrix& a, const CrossedMatrix& b, const SamplingGrid& grid = {});

}  // namespace qplane
