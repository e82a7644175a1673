#include "vandcond/error.hpp"

#include <cstdio>

namespace vandcond {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::DuplicateKnot: return "DuplicateKnot";
    case ErrorKind::KnotCollision: return "KnotCollision";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::RangeOverflow: return "RangeOverflow";
    case ErrorKind::BlockTooLarge: return "BlockTooLarge";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::ZeroPivot: return "ZeroPivot";
    case ErrorKind::NotEnoughSmallKnots: return "NotEnoughSmallKnots";
    case ErrorKind::UnitRadius: return "UnitRadius";
    case ErrorKind::BadShape: return "BadShape";
    case ErrorKind::OddSize: return "OddSize";
    case ErrorKind::NotSeparated: return "NotSeparated";
    case ErrorKind::ArcTooLong: return "ArcTooLong";
    case ErrorKind::VacuousCertificate: return "VacuousCertificate";
    case ErrorKind::NoPositiveBound: return "NoPositiveBound";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

DuplicateKnot::DuplicateKnot(std::size_t i, std::size_t j)
    : Error(ErrorKind::DuplicateKnot,
            "DuplicateKnot: knots " + std::to_string(i) + " and " + std::to_string(j) +
                " coincide within tolerance"),
      i_(i), j_(j) {}

KnotCollision::KnotCollision(std::size_t i, std::size_t j)
    : Error(ErrorKind::KnotCollision,
            "KnotCollision: s_" + std::to_string(i) + " coincides with t_" + std::to_string(j)),
      i_(i), j_(j) {}

namespace {
std::string overflow_message(double log10mag, const std::string& where) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", log10mag);
  std::string msg = "RangeOverflow: log10 magnitude ";
  msg += buf;
  msg += " is outside the double range";
  if (!where.empty()) msg += " (" + where + ")";
  return msg;
}
}  // namespace

RangeOverflow::RangeOverflow(double log10mag, const std::string& where)
    : Error(ErrorKind::RangeOverflow, overflow_message(log10mag, where)), log10mag_(log10mag) {}

ZeroPivot::ZeroPivot(std::size_t step)
    : Error(ErrorKind::ZeroPivot, "ZeroPivot: vanishing pivot at elimination step " +
                                      std::to_string(step)),
      step_(step) {}

}  // namespace vandcond
