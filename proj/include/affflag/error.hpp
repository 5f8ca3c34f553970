#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace affflag {

enum class ErrorCode {
  DivisionByZero,
  SqrtNotRepresentable,
  PrecisionExhausted,
  OddValuation,
  DimensionMismatch,
  NotMonomial,
  NotSymmetric,
  NotSkew,
  NotInvertible,
  DetNotSquare,
  DetNotOne,
  NotESymAPM,
  NotAffineTwistedInvolution,
  HasFixedPoint,
  NotFpfInvolution,
  SignRequired,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::SqrtNotRepresentable: return "SqrtNotRepresentable";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::OddValuation: return "OddValuation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotMonomial: return "NotMonomial";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotSkew: return "NotSkew";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::DetNotSquare: return "DetNotSquare";
    case ErrorCode::DetNotOne: return "DetNotOne";
    case ErrorCode::NotESymAPM: return "NotESymAPM";
    case ErrorCode::NotAffineTwistedInvolution: return "NotAffineTwistedInvolution";
    case ErrorCode::HasFixedPoint: return "HasFixedPoint";
    case ErrorCode::NotFpfInvolution: return "NotFpfInvolution";
    case ErrorCode::SignRequired: return "SignRequired";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// that callers (and the CLI) can name the predicate that failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace affflag
