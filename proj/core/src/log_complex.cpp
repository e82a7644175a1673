#include "vandcond/log_complex.hpp"

#include <cmath>
#include <numbers>

#include "vandcond/error.hpp"

namespace vandcond {

double wrap_phase(double phi) noexcept {
  constexpr double pi = std::numbers::pi;
  if (!std::isfinite(phi)) return 0.0;
  if (phi > -pi && phi <= pi) return phi;
  phi = std::remainder(phi, 2 * pi);  // now in [-pi, pi]
  if (phi <= -pi) phi += 2 * pi;
  return phi;
}

LogComplex::LogComplex(double log10mag, double phase) noexcept
    : log10mag_(log10mag), phase_(wrap_phase(phase)) {}

LogComplex LogComplex::from(std::complex<double> z) noexcept {
  const double a = std::abs(z);
  if (a == 0.0) return zero();
  return {std::log10(a), std::arg(z)};
}

bool LogComplex::is_zero() const noexcept {
  return std::isinf(log10mag_) && log10mag_ < 0;
}

std::complex<double> LogComplex::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  if (!(std::abs(log10mag_) <= kMaxLog10)) throw RangeOverflow(log10mag_);
  return std::polar(std::pow(10.0, log10mag_), phase_);
}

std::complex<double> LogComplex::to_complex_unchecked() const noexcept {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::pow(10.0, log10mag_), phase_);
}

LogComplex& LogComplex::operator*=(const LogComplex& o) noexcept {
  log10mag_ += o.log10mag_;
  phase_ = wrap_phase(phase_ + o.phase_);
  return *this;
}

LogComplex& LogComplex::operator/=(const LogComplex& o) noexcept {
  log10mag_ -= o.log10mag_;
  phase_ = wrap_phase(phase_ - o.phase_);
  return *this;
}

LogComplex LogComplex::operator-() const noexcept {
  return {log10mag_, phase_ + std::numbers::pi};
}

LogComplex LogComplex::pow(int k) const noexcept {
  if (is_zero()) return k == 0 ? one() : zero();
  return {k * log10mag_, k * phase_};
}

}  // namespace vandcond
