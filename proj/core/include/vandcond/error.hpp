#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vandcond {

enum class ErrorKind {
  EmptyInput,
  DuplicateKnot,
  KnotCollision,
  Overflow,
  RangeOverflow,
  BlockTooLarge,
  ShapeMismatch,
  ConvergenceFailure,
  ZeroPivot,
  NotEnoughSmallKnots,
  UnitRadius,
  BadShape,
  OddSize,
  NotSeparated,
  ArcTooLong,
  VacuousCertificate,
  NoPositiveBound,
  InvalidArgument,
  Parse,
};

const char* to_string(ErrorKind kind) noexcept;

// Base of every error raised by the library. Callers that only need to
// distinguish categories can switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Two knots of the same family closer than the distinctness tolerance.
class DuplicateKnot : public Error {
 public:
  DuplicateKnot(std::size_t i, std::size_t j);
  std::size_t first() const noexcept { return i_; }
  std::size_t second() const noexcept { return j_; }

 private:
  std::size_t i_, j_;
};

// s_i and t_j (one from each family) closer than the collision tolerance.
class KnotCollision : public Error {
 public:
  KnotCollision(std::size_t i, std::size_t j);
  std::size_t row() const noexcept { return i_; }
  std::size_t col() const noexcept { return j_; }

 private:
  std::size_t i_, j_;
};

// A log-domain value that cannot be represented as a double.
class RangeOverflow : public Error {
 public:
  explicit RangeOverflow(double log10mag, const std::string& where = {});
  double log10mag() const noexcept { return log10mag_; }

 private:
  double log10mag_;
};

class ZeroPivot : public Error {
 public:
  explicit ZeroPivot(std::size_t step);
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace vandcond
