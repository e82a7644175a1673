#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>

#include "vandcond/knots.hpp"

namespace vandcond {

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

enum class MatrixKind { Vandermonde, Cauchy, CV, DFT, BlockOf, Custom };

const char* to_string(MatrixKind kind) noexcept;

// How a matrix was built; carried along for reporting.
struct Descriptor {
  MatrixKind kind = MatrixKind::Custom;
  std::string source;  // label of the originating knot vector(s)
  std::map<std::string, double> params;
};

// Dense complex matrix with a structural descriptor. Entries are finite.
class DenseMatrix {
 public:
  DenseMatrix(MatrixXc entries, Descriptor descriptor);

  Eigen::Index rows() const noexcept { return m_.rows(); }
  Eigen::Index cols() const noexcept { return m_.cols(); }
  const cplx& operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  const MatrixXc& eigen() const noexcept { return m_; }
  const Descriptor& descriptor() const noexcept { return d_; }

 private:
  MatrixXc m_;
  Descriptor d_;
};

DenseMatrix custom_matrix(MatrixXc entries);

// (i,j) = s_i^j by repeated multiplication along each row. Throws Overflow
// if a power leaves the double range.
DenseMatrix vandermonde(const KnotVector& s);

DenseMatrix dft(std::size_t n);

// (i,j) = 1/(s_i - t_j); s and t may differ in length.
DenseMatrix cauchy(const KnotVector& s, const KnotVector& t, double tol = kDefaultKnotTolerance);

// t_j = f * omega_n^j, j < n = |s|.
KnotVector cv_grid(std::size_t n, cplx f);
DenseMatrix cv_matrix(const KnotVector& s, cplx f, double tol = kDefaultKnotTolerance);

DenseMatrix leading_block(const DenseMatrix& m, Eigen::Index q);

// Debug dump: "rows cols" header, then one "re,im" per entry, row-major.
void write_matrix_dump(std::ostream& out, const DenseMatrix& m);

}  // namespace vandcond
