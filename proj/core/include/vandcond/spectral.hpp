#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vandcond/knots.hpp"
#include "vandcond/matrix.hpp"

namespace vandcond {

struct SpectrumSummary {
  std::vector<double> sigma;  // descending
  double sigma1 = 0.0;
  double sigma_min = 0.0;
  double kappa = 0.0;
  double log10kappa = 0.0;
  // false once kappa * eps > 1e-2: first-order rounding in sigma_min can then
  // exceed 1%, so the third printed digit of kappa is no longer meaningful.
  bool trustworthy = true;
};

SpectrumSummary singular_values(const MatrixXc& m);
inline SpectrumSummary singular_values(const DenseMatrix& m) { return singular_values(m.eigen()); }

struct SvdFactors {
  MatrixXc u;
  Eigen::VectorXd sigma;
  MatrixXc v;
};

// Thin SVD m = u * diag(sigma) * v^H (LAPACK zgesvd, as every SVD here).
SvdFactors svd_full(const MatrixXc& m);

struct Norms {
  double norm1 = 0.0;     // max column sum
  double norm_inf = 0.0;  // max row sum
  double norm2 = 0.0;     // sigma_1
};

Norms norms(const DenseMatrix& m);

// Monic coefficients of prod (x - s_i), ascending powers, length n+1.
std::vector<cplx> poly_from_roots(const KnotVector& knots);

struct CircleMax {
  cplx f_star;
  double theta = 0.0;  // radians in [0, 2*pi)
  double log10_max = 0.0;
};

std::size_t default_circle_grid(std::size_t n) noexcept;

// max |s(f)| over |f| = 1: uniform grid, then golden-section refinement of the
// best cell down to 1e-12 rad. Never below the best grid value.
CircleMax max_abs_on_circle(const KnotVector& knots, std::size_t grid);

struct GenpResult {
  VectorXc x;
  double min_pivot = 0.0;
};

// Gaussian elimination without any row or column interchange.
// Throws ZeroPivot(k) when |pivot_k| <= 1e-300.
GenpResult genp_solve(const DenseMatrix& a, const VectorXc& b);

// In-place LU without pivoting, for solving many right-hand sides.
class GenpFactorization {
 public:
  explicit GenpFactorization(const MatrixXc& a);
  VectorXc solve(const VectorXc& b) const;
  double min_pivot() const noexcept { return min_pivot_; }

 private:
  MatrixXc lu_;
  double min_pivot_ = 0.0;
};

struct GenpStats {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double mean_rn = 0.0;
  double std_rn = 0.0;  // sample standard deviation (n-1 normalisation)
};

// Relative residuals ||Omega x - b|| / ||b|| of GENP on the n x n DFT matrix
// for `trials` real standard normal right-hand sides. Trial k draws from
// CounterRng(seed, k).
GenpStats genp_residual_experiment(std::size_t n, std::size_t trials, std::uint64_t seed);

}  // namespace vandcond
