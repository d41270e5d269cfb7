#pragma once

#include <stdexcept>
#include <string>

namespace njac {

enum class ErrorKind {
  SyntaxError,
  NegativeExponent,
  ZeroPolynomial,
  SingularMatrix,
  NotVanishingAtOrigin,
  PrecisionExhausted,
  Disagreement,
  NonGenericFailure,
  InconsistentOracle,
  NonReducedInput,
  RouteMismatch,
  CertificateMismatch,
  DegenerateJacobian,
  CommonComponent,
  NoConsensus,
  NotFinite,
  InvalidArgument,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::NegativeExponent: return "NegativeExponent";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::NotVanishingAtOrigin: return "NotVanishingAtOrigin";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::Disagreement: return "Disagreement";
    case ErrorKind::NonGenericFailure: return "NonGenericFailure";
    case ErrorKind::InconsistentOracle: return "InconsistentOracle";
    case ErrorKind::NonReducedInput: return "NonReducedInput";
    case ErrorKind::RouteMismatch: return "RouteMismatch";
    case ErrorKind::CertificateMismatch: return "CertificateMismatch";
    case ErrorKind::DegenerateJacobian: return "DegenerateJacobian";
    case ErrorKind::CommonComponent: return "CommonComponent";
    case ErrorKind::NoConsensus: return "NoConsensus";
    case ErrorKind::NotFinite: return "NotFinite";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Error raised for invalid input or a failed mathematical precondition.
/// Every error the library reports to callers is a DomainError.
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

/// Parse failure with the byte offset of the offending character.
class SyntaxError : public DomainError {
 public:
  SyntaxError(ErrorKind kind, std::size_t position, const std::string& what)
      : DomainError(kind, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace njac
