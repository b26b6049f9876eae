#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ramcm {

enum class ErrorKind {
  InvalidArgument,
  InvalidDiscriminant,
  NonConvergent,
  UnsupportedPair,
  InertPrime,
  NotRamified,
  NoSystem,
  PrecisionExhausted,
  MatrixContract,
  UnsupportedK,
  NoCubicFactor,
  NotInPrimeField,
  ZeroRoot,
  UnsupportedFamily,
  DegenerateJ,
  SearchExhausted,
  Inconclusive,
  CacheCorrupt,
  Io,
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

// Raised when complex coefficients do not round cleanly to integers.
class PrecisionExhaustedError : public Error {
 public:
  PrecisionExhaustedError(const std::string& what, double worst_residual,
                          long suggested_prec)
      : Error(ErrorKind::PrecisionExhausted, what),
        worst_residual_(worst_residual),
        suggested_prec_(suggested_prec) {}

  double worst_residual() const noexcept { return worst_residual_; }
  long suggested_prec() const noexcept { return suggested_prec_; }

 private:
  double worst_residual_;
  long suggested_prec_;
};

}  // namespace ramcm
