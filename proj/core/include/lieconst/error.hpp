#pragma once

#include <stdexcept>
#include <string>

namespace lieconst {

enum class ErrorCode {
  InvalidBand,
  InvalidConformalFactor,
  EigensolverResidual,
  UnknownMode,
  NoHarmonicFields,
  MissingSpectralData,
  BandOverflow,
  DecompositionResidual,
  GridMismatch,
  InvalidConfig,
  Io,
};

const char* to_string(ErrorCode code);

/// Single exception type for every recoverable failure in the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidBand: return "invalid band";
    case ErrorCode::InvalidConformalFactor: return "invalid conformal factor";
    case ErrorCode::EigensolverResidual: return "eigensolver residual";
    case ErrorCode::UnknownMode: return "unknown mode";
    case ErrorCode::NoHarmonicFields: return "no harmonic fields";
    case ErrorCode::MissingSpectralData: return "missing spectral data";
    case ErrorCode::BandOverflow: return "band overflow";
    case ErrorCode::DecompositionResidual: return "decomposition residual";
    case ErrorCode::GridMismatch: return "grid mismatch";
    case ErrorCode::InvalidConfig: return "invalid config";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

}  // namespace lieconst
