#include "jspec/types.hpp"

namespace jspec {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidFamilyParams: return "InvalidFamilyParams";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::AmbiguousMatch: return "AmbiguousMatch";
    case ErrorKind::TooLong: return "TooLong";
    case ErrorKind::NegativeInput: return "NegativeInput";
    case ErrorKind::PoleAtBase: return "PoleAtBase";
    case ErrorKind::NoTailBound: return "NoTailBound";
    case ErrorKind::Budget: return "Budget";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::NearSpectrum: return "NearSpectrum";
    case ErrorKind::ZeroArgument: return "ZeroArgument";
    case ErrorKind::WrongClass: return "WrongClass";
    case ErrorKind::OnContourZero: return "OnContourZero";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::ContourDeadlock: return "ContourDeadlock";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::QOutOfRange: return "QOutOfRange";
    case ErrorKind::PoleArgument: return "PoleArgument";
    case ErrorKind::JetDivisionByZero: return "JetDivisionByZero";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace jspec
