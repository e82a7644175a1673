#include "vandcond/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "vandcond/error.hpp"

namespace vandcond {

const char* to_string(MatrixKind kind) noexcept {
  switch (kind) {
    case MatrixKind::Vandermonde: return "vandermonde";
    case MatrixKind::Cauchy: return "cauchy";
    case MatrixKind::CV: return "cv";
    case MatrixKind::DFT: return "dft";
    case MatrixKind::BlockOf: return "block-of";
    case MatrixKind::Custom: return "custom";
  }
  return "custom";
}

DenseMatrix::DenseMatrix(MatrixXc entries, Descriptor descriptor)
    : m_(std::move(entries)), d_(std::move(descriptor)) {
  if (m_.rows() == 0 || m_.cols() == 0)
    throw Error(ErrorKind::EmptyInput, "EmptyInput: matrix has no entries");
  if (!m_.allFinite()) throw Error(ErrorKind::Overflow, "Overflow: matrix entry is not finite");
}

DenseMatrix custom_matrix(MatrixXc entries) {
  return DenseMatrix(std::move(entries), Descriptor{});
}

DenseMatrix vandermonde(const KnotVector& s) {
  const auto n = static_cast<Eigen::Index>(s.size());
  // |s_i|^{n-1} must fit in double
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double a = std::abs(s[i]);
    if (a > 0 && static_cast<double>(n - 1) * std::log10(a) > 307.5)
      throw Error(ErrorKind::Overflow, "Overflow: |s_" + std::to_string(i) + "|^(n-1) exceeds the double range");
  }
  MatrixXc v(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cplx p{1.0, 0.0};
    const cplx z = s[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j) {
      v(i, j) = p;
      p *= z;
    }
  }
  return DenseMatrix(std::move(v), {MatrixKind::Vandermonde, s.label(), s.params()});
}

DenseMatrix dft(std::size_t n) {
  DenseMatrix v = vandermonde(roots_of_unity(n));
  return DenseMatrix(v.eigen(), {MatrixKind::DFT, "dft", {{"n", static_cast<double>(n)}}});
}

DenseMatrix cauchy(const KnotVector& s, const KnotVector& t, double tol) {
  const auto m = static_cast<Eigen::Index>(s.size());
  const auto l = static_cast<Eigen::Index>(t.size());
  MatrixXc c(m, l);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < l; ++j) {
      const cplx d = s[static_cast<std::size_t>(i)] - t[static_cast<std::size_t>(j)];
      if (std::abs(d) <= tol)
        throw KnotCollision(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      c(i, j) = 1.0 / d;
    }
  return DenseMatrix(std::move(c), {MatrixKind::Cauchy, s.label() + "|" + t.label(), {}});
}

KnotVector cv_grid(std::size_t n, cplx f) {
  if (!(std::abs(f) > 0))
    throw Error(ErrorKind::InvalidArgument, "cv_grid: f must be nonzero");
  std::vector<cplx> t(n);
  const auto q = static_cast<std::int64_t>(n);
  for (std::size_t j = 0; j < n; ++j) t[j] = f * unit_root(static_cast<std::int64_t>(j), q);
  return KnotVector(std::move(t), "cv-grid",
                    {{"n", static_cast<double>(n)}, {"f_re", f.real()}, {"f_im", f.imag()}}, 0.0);
}

DenseMatrix cv_matrix(const KnotVector& s, cplx f, double tol) {
  DenseMatrix c = cauchy(s, cv_grid(s.size(), f), tol);
  return DenseMatrix(c.eigen(),
                     {MatrixKind::CV, s.label(), {{"f_re", f.real()}, {"f_im", f.imag()}}});
}

DenseMatrix leading_block(const DenseMatrix& m, Eigen::Index q) {
  if (q < 1 || q > std::min(m.rows(), m.cols()))
    throw Error(ErrorKind::BlockTooLarge, "BlockTooLarge: leading block of size " +
                                              std::to_string(q) + " requested");
  Descriptor d{MatrixKind::BlockOf, m.descriptor().source, m.descriptor().params};
  d.params["q"] = static_cast<double>(q);
  return DenseMatrix(m.eigen().topLeftCorner(q, q), std::move(d));
}

void write_matrix_dump(std::ostream& out, const DenseMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  char buf[64];
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", m(i, j).real(), m(i, j).imag());
      out << buf << '\n';
    }
}

}  // namespace vandcond
