#pragma once

#include <cstddef>
#include <vector>

#include "vandcond/knots.hpp"
#include "vandcond/log_complex.hpp"
#include "vandcond/matrix.hpp"

namespace vandcond {

// PaperEq5: (-1)^n s(t_j) t(s_i) / (t_j - s_i), the entry formula as published.
// DerivativeCorrected: the adjugate-exact entry
//   (C^{-1})_{ij} = s(t_i) t(s_j) / ((t_i - s_j) s'(s_j) t'(t_i)),
// i.e. PaperEq5 at the transposed index divided by s'(s_j) t'(t_i).
enum class InverseVariant { PaperEq5, DerivativeCorrected };

const char* to_string(InverseVariant v) noexcept;

// prod_i (x - s_i); exact zero when x is a knot.
LogComplex log_root_product(const KnotVector& knots, cplx x);

// prod_{k != i} (s_i - s_k)
LogComplex log_derivative_at_knot(const KnotVector& knots, std::size_t i);

// x^n - f^n in the log domain without overflow or catastrophic cancellation
// away from the grid x = f * omega_n^j.
LogComplex log_power_difference(cplx x, cplx f, int n);

// det C_{s,t} = prod_{i<j} (s_j - s_i)(t_i - t_j) / prod_{i,j} (s_i - t_j)
LogComplex cauchy_det(const KnotVector& s, const KnotVector& t,
                      double tol = kDefaultKnotTolerance);

// Precomputed polynomial values shared by every entry of a Cauchy inverse:
// s(t_j), t(s_i), s'(s_i), t'(t_j). O(n^2) to build, O(1) per entry.
class CauchyInverseFactors {
 public:
  CauchyInverseFactors(const KnotVector& s, const KnotVector& t,
                       double tol = kDefaultKnotTolerance);

  // CV specialisation: t_j = f*omega_n^j, t(x) = x^n - f^n and
  // t'(t_j) = n t_j^{n-1} taken analytically. PaperEq5 entries follow the
  // CV form (-1)^n s(t_j)(s_i^n - f^n)/(s_i - t_j).
  static CauchyInverseFactors for_cv(const KnotVector& s, cplx f,
                                     double tol = kDefaultKnotTolerance);

  std::size_t size() const noexcept { return s_.size(); }
  LogComplex entry(std::size_t i, std::size_t j, InverseVariant v) const;
  // max over all entries of log10 |entry|
  double max_log10_entry(InverseVariant v) const;
  // Throws RangeOverflow naming the first entry outside the double range.
  MatrixXc assemble(InverseVariant v) const;

  const std::vector<LogComplex>& s_at_t() const noexcept { return s_at_t_; }
  const std::vector<LogComplex>& t_at_s() const noexcept { return t_at_s_; }
  const std::vector<LogComplex>& s_prime() const noexcept { return s_prime_; }
  const std::vector<LogComplex>& t_prime() const noexcept { return t_prime_; }

 private:
  CauchyInverseFactors() = default;
  void check_collisions(double tol) const;

  std::vector<cplx> s_, t_;
  std::vector<LogComplex> s_at_t_;   // s(t_j)
  std::vector<LogComplex> t_at_s_;   // t(s_i)
  std::vector<LogComplex> s_prime_;  // s'(s_i)
  std::vector<LogComplex> t_prime_;  // t'(t_j)
  bool cv_form_ = false;
};

LogComplex cauchy_inverse_entry(const KnotVector& s, const KnotVector& t, std::size_t i,
                                std::size_t j, InverseVariant v);

DenseMatrix cauchy_inverse(const KnotVector& s, const KnotVector& t, InverseVariant v);

LogComplex cv_inverse_entry(const KnotVector& s, cplx f, std::size_t i, std::size_t j,
                            InverseVariant v);

// V^{-1} = diag(f^{n-1-j}) Omega^H diag(omega_n^{-j}) C_{s,f}^{-1} diag(1/(s_i^n - f^n))
DenseMatrix vandermonde_inverse_via_cv(const KnotVector& s, cplx f, InverseVariant v);

// Column i of V^{-1} holds the coefficients (ascending powers) of the Lagrange
// basis polynomial s(x) / ((x - s_i) s'(s_i)).
DenseMatrix vandermonde_inverse_lagrange(const KnotVector& s);

}  // namespace vandcond
