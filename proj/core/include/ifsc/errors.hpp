#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ifsc {

// All library failures derive from Error and carry a stable short code.
// The CLI prints the code verbatim and maps it onto its exit status, so
// codes are part of the public contract and must not be renamed casually.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

#define IFSC_DEFINE_ERROR(NAME, CODE)                       \
  class NAME : public Error {                               \
  public:                                                   \
    explicit NAME(const std::string& what)                  \
        : Error(CODE, what) {}                              \
  }

// Precondition violations on scalar arguments (bad distortion, rate, ...).
IFSC_DEFINE_ERROR(InvalidArgument, "E_INVALID_ARGUMENT");
// Matrix passed where a (strictly) positive definite one is required.
IFSC_DEFINE_ERROR(NotPositiveDefinite, "E_NOT_POSITIVE_DEFINITE");
// Matrix is singular (or too close to singular to invert reliably).
IFSC_DEFINE_ERROR(Singular, "E_SINGULAR");
// Integer matrix was required to have determinant +-1.
IFSC_DEFINE_ERROR(NotUnimodular, "E_NOT_UNIMODULAR");
// Exact enumeration requested beyond the supported dimension.
IFSC_DEFINE_ERROR(DimensionTooLarge, "E_DIMENSION_TOO_LARGE");
// Floating point broke down (degenerate basis, overflow, no convergence).
IFSC_DEFINE_ERROR(NumericalInstability, "E_NUMERICAL_INSTABILITY");
// Requested operating point lies outside the achievable region.
IFSC_DEFINE_ERROR(Unachievable, "E_UNACHIEVABLE");
// Actual channel noise exceeds the nominal design noise.
IFSC_DEFINE_ERROR(NoiseAboveNominal, "E_NOISE_ABOVE_NOMINAL");
// Operation requires an odd codebook size.
IFSC_DEFINE_ERROR(EvenCodebook, "E_EVEN_CODEBOOK");
// Bad or incomplete run configuration (CLI / config file).
IFSC_DEFINE_ERROR(ConfigError, "E_CONFIG");
// File could not be read or written.
IFSC_DEFINE_ERROR(IoError, "E_IO");

#undef IFSC_DEFINE_ERROR

}  // namespace ifsc
