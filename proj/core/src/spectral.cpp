#include "vandcond/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "vandcond/cauchy_inverse.hpp"
#include "vandcond/error.hpp"
#include "vandcond/rng.hpp"

namespace vandcond {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kZeroPivot = 1e-300;
constexpr double kTrustLimit = 1e-2;

}  // namespace

namespace {

// Reference LAPACK driver; the hidden trailing arguments are the Fortran
// lengths of the two job strings.
extern "C" void zgesvd_(const char* jobu, const char* jobvt, const int* m, const int* n, cplx* a,
                        const int* lda, double* s, cplx* u, const int* ldu, cplx* vt,
                        const int* ldvt, cplx* work, const int* lwork, double* rwork, int* info,
                        std::size_t, std::size_t);

struct GesvdOut {
  Eigen::VectorXd sigma;
  MatrixXc u;
  MatrixXc vt;
};

GesvdOut gesvd(const MatrixXc& m, bool vectors) {
  if (m.size() == 0) throw Error(ErrorKind::EmptyInput, "SVD of an empty matrix");
  if (!m.allFinite()) throw Error(ErrorKind::InvalidArgument, "singular_values: non-finite entry");
  MatrixXc a = m;
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  const int k = std::min(rows, cols);
  GesvdOut out;
  out.sigma.resize(k);
  const char job = vectors ? 'S' : 'N';
  if (vectors) {
    out.u.resize(rows, k);
    out.vt.resize(k, cols);
  }
  cplx dummy{};
  cplx* u = vectors ? out.u.data() : &dummy;
  cplx* vt = vectors ? out.vt.data() : &dummy;
  const int ldu = vectors ? rows : 1;
  const int ldvt = vectors ? k : 1;
  std::vector<double> rwork(5 * static_cast<std::size_t>(k));
  int info = 0;
  int lwork = -1;
  cplx query{};
  zgesvd_(&job, &job, &rows, &cols, a.data(), &rows, out.sigma.data(), u, &ldu, vt, &ldvt, &query,
          &lwork, rwork.data(), &info, 1, 1);
  lwork = std::max(1, static_cast<int>(query.real()));
  std::vector<cplx> work(static_cast<std::size_t>(lwork));
  zgesvd_(&job, &job, &rows, &cols, a.data(), &rows, out.sigma.data(), u, &ldu, vt, &ldvt,
          work.data(), &lwork, rwork.data(), &info, 1, 1);
  if (info > 0) throw Error(ErrorKind::ConvergenceFailure, "ConvergenceFailure: SVD did not converge");
  if (info < 0) throw Error(ErrorKind::InvalidArgument, "SVD: invalid argument " + std::to_string(-info));
  return out;
}

}  // namespace

SpectrumSummary singular_values(const MatrixXc& m) {
  const GesvdOut svd = gesvd(m, false);
  SpectrumSummary out;
  out.sigma.assign(svd.sigma.data(), svd.sigma.data() + svd.sigma.size());
  std::sort(out.sigma.begin(), out.sigma.end(), std::greater<>());
  out.sigma1 = out.sigma.front();
  out.sigma_min = out.sigma.back();
  if (out.sigma_min > 0) {
    out.kappa = out.sigma1 / out.sigma_min;
    out.log10kappa = std::log10(out.sigma1) - std::log10(out.sigma_min);
  } else {
    out.kappa = std::numeric_limits<double>::infinity();
    out.log10kappa = std::numeric_limits<double>::infinity();
  }
  out.trustworthy = std::isfinite(out.kappa) && out.kappa * kEps <= kTrustLimit;
  return out;
}

SvdFactors svd_full(const MatrixXc& m) {
  GesvdOut svd = gesvd(m, true);
  return {std::move(svd.u), std::move(svd.sigma), svd.vt.adjoint()};
}

Norms norms(const DenseMatrix& m) {
  const MatrixXc& a = m.eigen();
  Norms out;
  out.norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  out.norm_inf = a.cwiseAbs().rowwise().sum().maxCoeff();
  out.norm2 = singular_values(a).sigma1;
  return out;
}

std::vector<cplx> poly_from_roots(const KnotVector& knots) {
  const std::size_t n = knots.size();
  if (n > 4096) throw Error(ErrorKind::InvalidArgument, "poly_from_roots: more than 4096 roots");
  std::vector<cplx> c(n + 1, cplx{});
  c[0] = 1.0;
  // multiply by (x - r) one root at a time; c holds degree-k polynomial
  for (std::size_t k = 0; k < n; ++k) {
    const cplx r = knots[k];
    for (std::size_t d = k + 1; d >= 1; --d) c[d] = c[d - 1] - r * c[d];
    c[0] = -r * c[0];
  }
  for (const auto& z : c)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw RangeOverflow(std::numeric_limits<double>::infinity(), "polynomial coefficients");
  return c;
}

std::size_t default_circle_grid(std::size_t n) noexcept { return std::max<std::size_t>(1024, 16 * n); }

namespace {

double log10_abs_on_circle(const KnotVector& knots, double theta) {
  return log_root_product(knots, std::polar(1.0, theta)).log10mag();
}

}  // namespace

CircleMax max_abs_on_circle(const KnotVector& knots, std::size_t grid) {
  if (grid < 8) throw Error(ErrorKind::InvalidArgument, "max_abs_on_circle: grid must be >= 8");
  const double two_pi = 2.0 * std::numbers::pi;
  const double h = two_pi / static_cast<double>(grid);
  std::size_t best_k = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid; ++k) {
    const double v = log10_abs_on_circle(knots, h * static_cast<double>(k));
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  double best_theta = h * static_cast<double>(best_k);

  // golden-section search on the two cells adjacent to the best sample
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = best_theta - h;
  double b = best_theta + h;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = log10_abs_on_circle(knots, x1);
  double f2 = log10_abs_on_circle(knots, x2);
  while (b - a > 1e-12) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = log10_abs_on_circle(knots, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = log10_abs_on_circle(knots, x1);
    }
  }
  const double mid = 0.5 * (a + b);
  const double fmid = log10_abs_on_circle(knots, mid);
  if (fmid > best) {
    best = fmid;
    best_theta = mid;
  }
  best_theta = std::fmod(best_theta, two_pi);
  if (best_theta < 0) best_theta += two_pi;
  return {std::polar(1.0, best_theta), best_theta, best};
}

GenpFactorization::GenpFactorization(const MatrixXc& a) : lu_(a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::ShapeMismatch, "GENP needs a square matrix");
  const Eigen::Index n = a.rows();
  min_pivot_ = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx pivot = lu_(k, k);
    const double ap = std::abs(pivot);
    min_pivot_ = std::min(min_pivot_, ap);
    if (!(ap > kZeroPivot)) throw ZeroPivot(static_cast<std::size_t>(k));
    const Eigen::Index rest = n - k - 1;
    if (rest == 0) break;
    lu_.col(k).tail(rest) /= pivot;
    lu_.bottomRightCorner(rest, rest).noalias() -= lu_.col(k).tail(rest) * lu_.row(k).tail(rest);
  }
}

VectorXc GenpFactorization::solve(const VectorXc& b) const {
  if (b.size() != lu_.rows()) throw Error(ErrorKind::ShapeMismatch, "GENP: right-hand side length mismatch");
  VectorXc y = lu_.triangularView<Eigen::UnitLower>().solve(b);
  return lu_.triangularView<Eigen::Upper>().solve(y);
}

GenpResult genp_solve(const DenseMatrix& a, const VectorXc& b) {
  GenpFactorization f(a.eigen());
  return {f.solve(b), f.min_pivot()};
}

GenpStats genp_residual_experiment(std::size_t n, std::size_t trials, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "genp_residual_experiment: n must be >= 2");
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "genp_residual_experiment: trials must be >= 1");
  const DenseMatrix omega = dft(n);
  const GenpFactorization f(omega.eigen());
  std::vector<double> rn(trials);
  const auto ne = static_cast<Eigen::Index>(n);
  for (std::size_t k = 0; k < trials; ++k) {
    CounterRng rng(seed, k);
    VectorXc b(ne);
    for (Eigen::Index i = 0; i < ne; ++i) b(i) = cplx{rng.normal(), 0.0};
    const VectorXc x = f.solve(b);
    rn[k] = (omega.eigen() * x - b).norm() / b.norm();
  }
  GenpStats s{n, trials, seed, 0.0, 0.0};
  for (double r : rn) s.mean_rn += r;
  s.mean_rn /= static_cast<double>(trials);
  if (trials > 1) {
    double acc = 0.0;
    for (double r : rn) acc += (r - s.mean_rn) * (r - s.mean_rn);
    s.std_rn = std::sqrt(acc / static_cast<double>(trials - 1));
  }
  return s;
}

}  // namespace vandcond
