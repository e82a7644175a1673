#include "vandcond/knots.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "vandcond/error.hpp"

namespace vandcond {

cplx unit_root(std::int64_t p, std::int64_t q) {
  if (q <= 0) throw Error(ErrorKind::InvalidArgument, "unit_root: denominator must be positive");
  p %= q;
  if (p < 0) p += q;
  // angle = (pi/2) * (4p/q) = quadrant*(pi/2) + (pi/2)*rem/q
  const std::int64_t four_p = 4 * p;
  const std::int64_t quadrant = four_p / q;
  const std::int64_t rem = four_p - quadrant * q;
  double c, s;
  if (2 * rem <= q) {
    const double theta = std::numbers::pi / 2 * static_cast<double>(rem) / static_cast<double>(q);
    c = std::cos(theta);
    s = std::sin(theta);
  } else {
    const double theta =
        std::numbers::pi / 2 * static_cast<double>(q - rem) / static_cast<double>(q);
    c = std::sin(theta);
    s = std::cos(theta);
  }
  switch (quadrant) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

KnotVector::KnotVector(std::vector<cplx> knots, std::string label, Params params, double tol)
    : knots_(std::move(knots)), label_(std::move(label)), params_(std::move(params)) {
  if (knots_.empty()) throw Error(ErrorKind::EmptyInput, "EmptyInput: knot vector is empty");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    const cplx& z = knots_[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorKind::InvalidArgument,
                  "knot " + std::to_string(i) + " is not a finite complex number");
  }
  for (std::size_t i = 0; i < knots_.size(); ++i)
    for (std::size_t j = i + 1; j < knots_.size(); ++j)
      if (std::abs(knots_[i] - knots_[j]) <= tol) throw DuplicateKnot(i, j);
}

double KnotVector::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : knots_) m = std::max(m, std::abs(z));
  return m;
}

double KnotVector::min_gap() const noexcept {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < knots_.size(); ++i)
    for (std::size_t j = i + 1; j < knots_.size(); ++j)
      g = std::min(g, std::abs(knots_[i] - knots_[j]));
  return g;
}

KnotVector KnotVector::prefix(std::size_t m) const {
  if (m == 0 || m > knots_.size())
    throw Error(ErrorKind::InvalidArgument, "prefix length out of range");
  auto p = params_;
  p["n"] = static_cast<double>(m);
  return KnotVector({knots_.begin(), knots_.begin() + static_cast<std::ptrdiff_t>(m)}, label_,
                    std::move(p), 0.0);
}

KnotVector KnotVector::scaled(cplx a) const {
  std::vector<cplx> out(knots_);
  for (auto& z : out) z *= a;
  return KnotVector(std::move(out), label_ + "*scaled", params_, 0.0);
}

KnotVector KnotVector::shifted(cplx a) const {
  std::vector<cplx> out(knots_);
  for (auto& z : out) z += a;
  return KnotVector(std::move(out), label_ + "+shifted", params_, 0.0);
}

KnotVector KnotVector::subset(std::span<const std::size_t> indices) const {
  std::vector<cplx> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(knots_.at(i));
  return KnotVector(std::move(out), label_ + "[subset]", params_, 0.0);
}

KnotVector make_knot_vector(std::vector<cplx> points, double tol) {
  return KnotVector(std::move(points), "custom", {}, tol);
}

Fraction quasi_cyclic_fraction(std::uint64_t i) {
  if (i == 0) return {0, 1};
  const int k = std::bit_width(i) - 1;  // 2^k <= i < 2^{k+1}
  const std::uint64_t base = std::uint64_t{1} << k;
  return {static_cast<std::int64_t>(2 * (i - base) + 1), static_cast<std::int64_t>(2 * base)};
}

Fraction van_der_corput_fraction(std::uint64_t i) {
  if (i == 0) return {0, 1};
  const int bits = std::bit_width(i);
  std::uint64_t rev = 0;
  for (int b = 0; b < bits; ++b)
    if (i & (std::uint64_t{1} << b)) rev |= std::uint64_t{1} << (bits - 1 - b);
  return {static_cast<std::int64_t>(rev), static_cast<std::int64_t>(std::uint64_t{1} << bits)};
}

namespace {

void require_positive(std::size_t n, const char* what) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, std::string(what) + ": n must be >= 1");
}

template <class FractionFn>
std::vector<cplx> from_fractions(std::size_t n, FractionFn fn) {
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = unit_root(fn(i));
  return out;
}

}  // namespace

KnotVector roots_of_unity(std::size_t n) {
  require_positive(n, "roots_of_unity");
  std::vector<cplx> out(n);
  const auto q = static_cast<std::int64_t>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = unit_root(static_cast<std::int64_t>(i), q);
  return KnotVector(std::move(out), "dft", {{"n", static_cast<double>(n)}});
}

KnotVector quasi_cyclic(std::size_t n) {
  require_positive(n, "quasi_cyclic");
  return KnotVector(from_fractions(n, quasi_cyclic_fraction), "quasi-cyclic",
                    {{"n", static_cast<double>(n)}});
}

KnotVector van_der_corput(std::size_t n) {
  require_positive(n, "van_der_corput");
  return KnotVector(from_fractions(n, van_der_corput_fraction), "van-der-corput",
                    {{"n", static_cast<double>(n)}});
}

KnotVector single_outlier(std::size_t n, cplx s_last) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "single_outlier: n must be >= 2");
  std::vector<cplx> out(n);
  const auto q = static_cast<std::int64_t>(n);
  for (std::size_t i = 0; i + 1 < n; ++i) out[i] = unit_root(static_cast<std::int64_t>(i), q);
  out[n - 1] = s_last;
  return KnotVector(std::move(out), "single-outlier",
                    {{"n", static_cast<double>(n)},
                     {"s_last_re", s_last.real()},
                     {"s_last_im", s_last.imag()}});
}

KnotVector scaled_cluster(std::size_t n, std::size_t k, double rho) {
  if (k < 1 || k >= n)
    throw Error(ErrorKind::InvalidArgument, "scaled_cluster: requires 1 <= k < n");
  if (!(rho > 0.0 && rho < 1.0))
    throw Error(ErrorKind::InvalidArgument, "scaled_cluster: rho must lie in (0,1)");
  std::vector<cplx> out;
  out.reserve(n);
  const auto big = static_cast<std::int64_t>(n - k);
  const auto small = static_cast<std::int64_t>(k);
  for (std::int64_t i = 0; i < big; ++i) out.push_back(unit_root(i, big));
  for (std::int64_t i = 0; i < small; ++i) out.push_back(rho * unit_root(i, small));
  return KnotVector(std::move(out), "scaled-cluster",
                    {{"n", static_cast<double>(n)}, {"k", static_cast<double>(k)}, {"rho", rho}});
}

cplx parse_complex(const std::string& text) {
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  auto to_double = [&](const std::string& raw) {
    const std::string s = trim(raw);
    if (s.empty()) throw Error(ErrorKind::Parse, "cannot parse complex value '" + text + "'");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "cannot parse complex value '" + text + "'");
    }
    if (used != s.size()) throw Error(ErrorKind::Parse, "cannot parse complex value '" + text + "'");
    return v;
  };
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {to_double(text), 0.0};
  return {to_double(text.substr(0, comma)), to_double(text.substr(comma + 1))};
}

KnotVector read_knots(std::istream& in, const std::string& label) {
  std::vector<cplx> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      pts.push_back(parse_complex(line));
    } catch (const Error&) {
      throw Error(ErrorKind::Parse, "knot file line " + std::to_string(lineno) + ": '" + line + "'");
    }
  }
  const auto n = static_cast<double>(pts.size());
  return KnotVector(std::move(pts), label, {{"n", n}});
}

KnotVector read_knot_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open knot file " + path);
  return read_knots(in, "file");
}

void write_knots(std::ostream& out, const KnotVector& s) {
  out << "# " << s.label() << " n=" << s.size() << '\n';
  char buf[64];
  for (const auto& z : s) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", z.real(), z.imag());
    out << buf << '\n';
  }
}

void write_knot_file(const std::string& path, const KnotVector& s) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write knot file " + path);
  write_knots(out, s);
}

}  // namespace vandcond
