#pragma once

#include <complex>
#include <limits>

namespace vandcond {

// A complex scalar stored as (log10 |z|, arg z). Products and quotients of
// hundreds of factors stay exact in magnitude regardless of the double range.
// log10mag == -inf encodes zero.
class LogComplex {
 public:
  // Conversion back to std::complex throws RangeOverflow past this magnitude.
  static constexpr double kMaxLog10 = 300.0;

  constexpr LogComplex() noexcept = default;
  LogComplex(double log10mag, double phase) noexcept;

  static LogComplex from(std::complex<double> z) noexcept;
  static LogComplex one() noexcept { return {0.0, 0.0}; }
  static LogComplex zero() noexcept {
    return {-std::numeric_limits<double>::infinity(), 0.0};
  }

  double log10mag() const noexcept { return log10mag_; }
  double phase() const noexcept { return phase_; }
  bool is_zero() const noexcept;

  // Throws RangeOverflow when |log10mag| > kMaxLog10 (zero is fine).
  std::complex<double> to_complex() const;
  // Like to_complex but saturates to 0 / inf instead of throwing.
  std::complex<double> to_complex_unchecked() const noexcept;

  LogComplex& operator*=(const LogComplex& o) noexcept;
  LogComplex& operator/=(const LogComplex& o) noexcept;
  LogComplex& operator*=(std::complex<double> z) noexcept { return *this *= from(z); }
  LogComplex& operator/=(std::complex<double> z) noexcept { return *this /= from(z); }

  friend LogComplex operator*(LogComplex a, const LogComplex& b) noexcept { return a *= b; }
  friend LogComplex operator/(LogComplex a, const LogComplex& b) noexcept { return a /= b; }

  LogComplex operator-() const noexcept;
  LogComplex pow(int k) const noexcept;
  LogComplex conj() const noexcept { return {log10mag_, -phase_}; }

 private:
  double log10mag_ = 0.0;
  double phase_ = 0.0;
};

// Wraps an angle into (-pi, pi].
double wrap_phase(double phi) noexcept;

}  // namespace vandcond
