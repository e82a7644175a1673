#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace vandcond {

using cplx = std::complex<double>;

inline constexpr double kDefaultKnotTolerance = 1e-13;

// Exact rational p/q, used for knot angles expressed as fractions of a turn.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

// exp(2*pi*i*p/q) evaluated from the exact fraction with quadrant and octant
// reduction, so quarter turns come out exact and everything else within 1 ulp.
cplx unit_root(std::int64_t p, std::int64_t q);
inline cplx unit_root(Fraction f) { return unit_root(f.num, f.den); }

// Ordered sequence of pairwise distinct complex knots with a provenance label.
// Immutable once built.
class KnotVector {
 public:
  using Params = std::map<std::string, double>;

  KnotVector(std::vector<cplx> knots, std::string label, Params params = {},
             double tol = kDefaultKnotTolerance);

  std::size_t size() const noexcept { return knots_.size(); }
  const cplx& operator[](std::size_t i) const { return knots_[i]; }
  std::span<const cplx> knots() const noexcept { return knots_; }
  auto begin() const noexcept { return knots_.begin(); }
  auto end() const noexcept { return knots_.end(); }

  const std::string& label() const noexcept { return label_; }
  const Params& params() const noexcept { return params_; }

  // max_i |s_i|
  double max_abs() const noexcept;
  // min_{i != j} |s_i - s_j|; +inf for a singleton.
  double min_gap() const noexcept;

  KnotVector prefix(std::size_t m) const;
  KnotVector scaled(cplx a) const;
  KnotVector shifted(cplx a) const;
  KnotVector subset(std::span<const std::size_t> indices) const;

 private:
  std::vector<cplx> knots_;
  std::string label_;
  Params params_;
};

KnotVector make_knot_vector(std::vector<cplx> points, double tol = kDefaultKnotTolerance);

// f_i of the quasi-cyclic order: 0, 1/2, 1/4, 3/4, 1/8, 3/8, 5/8, 7/8, 1/16, ...
Fraction quasi_cyclic_fraction(std::uint64_t i);
// Binary radical inverse of i: 0, 1/2, 1/4, 3/4, 1/8, 5/8, 3/8, 7/8, 1/16, ...
Fraction van_der_corput_fraction(std::uint64_t i);

KnotVector roots_of_unity(std::size_t n);
KnotVector quasi_cyclic(std::size_t n);
KnotVector van_der_corput(std::size_t n);
// omega_n^i for i < n-1, then s_last.
KnotVector single_outlier(std::size_t n, cplx s_last);
// n-k roots of unity of order n-k, followed by k roots of order k scaled by rho.
KnotVector scaled_cluster(std::size_t n, std::size_t k, double rho);

// Knot file: one `re,im` per line, '#' starts a comment line.
KnotVector read_knots(std::istream& in, const std::string& label = "file");
KnotVector read_knot_file(const std::string& path);
void write_knots(std::ostream& out, const KnotVector& s);
void write_knot_file(const std::string& path, const KnotVector& s);

// Parses "re,im" or a bare real "re".
cplx parse_complex(const std::string& text);

}  // namespace vandcond
