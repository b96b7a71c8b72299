#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jspec {

using cplx = std::complex<double>;

enum class ErrorKind {
  InvalidFamilyParams,
  PoleHit,
  AmbiguousMatch,
  TooLong,
  NegativeInput,
  PoleAtBase,
  NoTailBound,
  Budget,
  DegenerateDenominator,
  NearSpectrum,
  ZeroArgument,
  WrongClass,
  OnContourZero,
  NonConvergent,
  DepthExceeded,
  ContourDeadlock,
  Inconsistent,
  WindowTooSmall,
  ZeroVector,
  QOutOfRange,
  PoleArgument,
  JetDivisionByZero,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

enum class Side { Left, Right };

}  // namespace jspec
