#include "vandcond/cauchy_inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vandcond/error.hpp"
#include "vandcond/spectral.hpp"

namespace vandcond {

const char* to_string(InverseVariant v) noexcept {
  return v == InverseVariant::PaperEq5 ? "paper-eq5" : "derivative-corrected";
}

LogComplex log_root_product(const KnotVector& knots, cplx x) {
  LogComplex p = LogComplex::one();
  for (const auto& s : knots) {
    const cplx d = x - s;
    if (d == cplx{}) return LogComplex::zero();
    p *= LogComplex::from(d);
  }
  return p;
}

LogComplex log_derivative_at_knot(const KnotVector& knots, std::size_t i) {
  LogComplex p = LogComplex::one();
  for (std::size_t k = 0; k < knots.size(); ++k)
    if (k != i) p *= LogComplex::from(knots[i] - knots[k]);
  return p;
}

LogComplex log_power_difference(cplx x, cplx f, int n) {
  if (x == cplx{}) return -LogComplex::from(f).pow(n);
  const cplx logw = std::log(x / f);
  const double scale = n * logw.real();  // ln |x/f|^n
  if (scale > 40.0) {
    // x^n (1 - (f/x)^n), correction below 1e-17
    return LogComplex::from(x).pow(n) * LogComplex::from(1.0 - std::exp(-static_cast<double>(n) * logw));
  }
  if (scale < -40.0) {
    return -LogComplex::from(f).pow(n) * LogComplex::from(1.0 - std::exp(static_cast<double>(n) * logw));
  }
  const cplx z = std::exp(static_cast<double>(n) * logw);
  return LogComplex::from(f).pow(n) * LogComplex::from(z - 1.0);
}

LogComplex cauchy_det(const KnotVector& s, const KnotVector& t, double tol) {
  if (s.size() != t.size())
    throw Error(ErrorKind::ShapeMismatch, "cauchy_det: knot families differ in length");
  const std::size_t n = s.size();
  LogComplex num = LogComplex::one();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      num *= LogComplex::from(s[j] - s[i]);
      num *= LogComplex::from(t[i] - t[j]);
    }
  LogComplex den = LogComplex::one();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx d = s[i] - t[j];
      if (std::abs(d) <= tol) throw KnotCollision(i, j);
      den *= LogComplex::from(d);
    }
  return num / den;
}

CauchyInverseFactors::CauchyInverseFactors(const KnotVector& s, const KnotVector& t, double tol)
    : s_(s.begin(), s.end()), t_(t.begin(), t.end()) {
  if (s.size() != t.size())
    throw Error(ErrorKind::ShapeMismatch, "Cauchy inverse needs a square matrix");
  check_collisions(tol);
  const std::size_t n = s.size();
  s_at_t_.resize(n);
  t_at_s_.resize(n);
  s_prime_.resize(n);
  t_prime_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    s_at_t_[j] = log_root_product(s, t[j]);
    t_prime_[j] = log_derivative_at_knot(t, j);
  }
  for (std::size_t i = 0; i < n; ++i) {
    t_at_s_[i] = log_root_product(t, s[i]);
    s_prime_[i] = log_derivative_at_knot(s, i);
  }
}

CauchyInverseFactors CauchyInverseFactors::for_cv(const KnotVector& s, cplx f, double tol) {
  const KnotVector t = cv_grid(s.size(), f);
  const std::size_t n = s.size();
  const int ni = static_cast<int>(n);
  CauchyInverseFactors c;
  c.s_.assign(s.begin(), s.end());
  c.t_.assign(t.begin(), t.end());
  c.cv_form_ = true;
  c.check_collisions(tol);
  c.s_at_t_.resize(n);
  c.t_at_s_.resize(n);
  c.s_prime_.resize(n);
  c.t_prime_.resize(n);
  const LogComplex log_n = LogComplex::from(static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    c.s_at_t_[j] = log_root_product(s, t[j]);
    c.t_prime_[j] = log_n * LogComplex::from(t[j]).pow(ni - 1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    c.t_at_s_[i] = log_power_difference(s[i], f, ni);
    c.s_prime_[i] = log_derivative_at_knot(s, i);
  }
  return c;
}

void CauchyInverseFactors::check_collisions(double tol) const {
  for (std::size_t i = 0; i < s_.size(); ++i)
    for (std::size_t j = 0; j < t_.size(); ++j)
      if (std::abs(s_[i] - t_[j]) <= tol) throw KnotCollision(i, j);
}

LogComplex CauchyInverseFactors::entry(std::size_t i, std::size_t j, InverseVariant v) const {
  const std::size_t n = s_.size();
  if (i >= n || j >= n) throw Error(ErrorKind::InvalidArgument, "inverse entry index out of range");
  if (v == InverseVariant::PaperEq5) {
    LogComplex e = s_at_t_[j] * t_at_s_[i];
    if (cv_form_) {
      e /= LogComplex::from(s_[i] - t_[j]);
    } else {
      e /= LogComplex::from(t_[j] - s_[i]);
    }
    return (n % 2 == 1) ? -e : e;
  }
  // Rows of C^{-1} are indexed by t, columns by s.
  LogComplex e = s_at_t_[i] * t_at_s_[j];
  e /= LogComplex::from(t_[i] - s_[j]);
  e /= s_prime_[j];
  e /= t_prime_[i];
  return e;
}

double CauchyInverseFactors::max_log10_entry(InverseVariant v) const {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s_.size(); ++i)
    for (std::size_t j = 0; j < s_.size(); ++j) best = std::max(best, entry(i, j, v).log10mag());
  return best;
}

MatrixXc CauchyInverseFactors::assemble(InverseVariant v) const {
  const auto n = static_cast<Eigen::Index>(s_.size());
  MatrixXc out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const LogComplex e = entry(static_cast<std::size_t>(i), static_cast<std::size_t>(j), v);
      if (!(std::abs(e.log10mag()) <= LogComplex::kMaxLog10) && !e.is_zero())
        throw RangeOverflow(e.log10mag(),
                            "inverse entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
      out(i, j) = e.to_complex();
    }
  return out;
}

LogComplex cauchy_inverse_entry(const KnotVector& s, const KnotVector& t, std::size_t i,
                                std::size_t j, InverseVariant v) {
  return CauchyInverseFactors(s, t).entry(i, j, v);
}

DenseMatrix cauchy_inverse(const KnotVector& s, const KnotVector& t, InverseVariant v) {
  CauchyInverseFactors f(s, t);
  return DenseMatrix(f.assemble(v), {MatrixKind::Custom, "cauchy-inverse:" + std::string(to_string(v)), {}});
}

LogComplex cv_inverse_entry(const KnotVector& s, cplx f, std::size_t i, std::size_t j,
                            InverseVariant v) {
  return CauchyInverseFactors::for_cv(s, f).entry(i, j, v);
}

DenseMatrix vandermonde_inverse_via_cv(const KnotVector& s, cplx f, InverseVariant v) {
  const std::size_t n = s.size();
  const auto ne = static_cast<Eigen::Index>(n);
  const int ni = static_cast<int>(n);
  const auto factors = CauchyInverseFactors::for_cv(s, f);

  // W = diag(omega^{-k}) C^{-1} diag(1/(s_i^n - f^n)), formed in the log domain
  MatrixXc w(ne, ne);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      LogComplex e = factors.entry(k, i, v) / factors.t_at_s()[i];
      e *= LogComplex::from(unit_root(-static_cast<std::int64_t>(k), ni));
      if (!(std::abs(e.log10mag()) <= LogComplex::kMaxLog10) && !e.is_zero())
        throw RangeOverflow(e.log10mag(), "V^{-1} intermediate");
      w(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = e.to_complex();
    }
  MatrixXc omega_h(ne, ne);
  for (Eigen::Index j = 0; j < ne; ++j)
    for (Eigen::Index k = 0; k < ne; ++k)
      omega_h(j, k) = unit_root(-static_cast<std::int64_t>((j * k) % ne), ni);
  MatrixXc out = omega_h * w;
  for (Eigen::Index j = 0; j < ne; ++j) {
    const LogComplex scale = LogComplex::from(f).pow(ni - 1 - static_cast<int>(j));
    out.row(j) *= scale.to_complex();
  }
  return DenseMatrix(std::move(out),
                     {MatrixKind::Custom, "vandermonde-inverse-cv:" + std::string(to_string(v)),
                      {{"f_re", f.real()}, {"f_im", f.imag()}}});
}

DenseMatrix vandermonde_inverse_lagrange(const KnotVector& s) {
  const std::size_t n = s.size();
  const auto ne = static_cast<Eigen::Index>(n);
  const std::vector<cplx> a = poly_from_roots(s);  // length n+1, a[n] = 1
  MatrixXc out(ne, ne);
  std::vector<cplx> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx r = s[i];
    // q(x) = s(x) / (x - r), deflating from whichever end keeps |r| <= 1
    if (std::abs(r) <= 1.0) {
      q[n - 1] = a[n];
      for (std::size_t k = n - 1; k >= 1; --k) q[k - 1] = a[k] + r * q[k];
    } else {
      q[0] = -a[0] / r;
      for (std::size_t k = 1; k < n; ++k) q[k] = (q[k - 1] - a[k]) / r;
    }
    const LogComplex d = log_derivative_at_knot(s, i);
    if (!(std::abs(d.log10mag()) <= LogComplex::kMaxLog10))
      throw RangeOverflow(d.log10mag(), "s'(s_" + std::to_string(i) + ")");
    const cplx dinv = 1.0 / d.to_complex();
    for (std::size_t j = 0; j < n; ++j)
      out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = q[j] * dinv;
  }
  if (!out.allFinite()) throw RangeOverflow(std::numeric_limits<double>::infinity(), "Lagrange inverse");
  return DenseMatrix(std::move(out), {MatrixKind::Custom, "vandermonde-inverse-lagrange", {}});
}

}  // namespace vandcond
