#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace acfo {

enum class ErrorCode {
  NotPrime,
  SizeCapExceeded,
  DivisionByZero,
  ContextMismatch,
  ZeroArgument,
  NotADivisor,
  NotAMultiple,
  CoherentExtensionSearchExhausted,
  CharMismatch,
  NotInTruncationWindow,
  NotRepresentedAtThisLevel,
  IncoherentSequence,
  NoCompatibleRoot,
  EmptyTorusPart,
  BadBox,
  ZeroVectorL,
  UnsupportedRepresentation,
  ZeroPolynomial,
  UnsupportedNumberField,
  SyntaxError,
  ArityError,
  InvalidArgument,
  HyperArcInvalid,
};

std::string_view error_name(ErrorCode code);

/// Domain error raised by every module. The code is stable and is what the
/// CLI reports in its JSON error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::NotADivisor: return "NotADivisor";
    case ErrorCode::NotAMultiple: return "NotAMultiple";
    case ErrorCode::CoherentExtensionSearchExhausted: return "CoherentExtensionSearchExhausted";
    case ErrorCode::CharMismatch: return "CharMismatch";
    case ErrorCode::NotInTruncationWindow: return "NotInTruncationWindow";
    case ErrorCode::NotRepresentedAtThisLevel: return "NotRepresentedAtThisLevel";
    case ErrorCode::IncoherentSequence: return "IncoherentSequence";
    case ErrorCode::NoCompatibleRoot: return "NoCompatibleRoot";
    case ErrorCode::EmptyTorusPart: return "EmptyTorusPart";
    case ErrorCode::BadBox: return "BadBox";
    case ErrorCode::ZeroVectorL: return "ZeroVectorL";
    case ErrorCode::UnsupportedRepresentation: return "UnsupportedRepresentation";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::UnsupportedNumberField: return "UnsupportedNumberField";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::HyperArcInvalid: return "HyperArcInvalid";
  }
  return "Unknown";
}

}  // namespace acfo
