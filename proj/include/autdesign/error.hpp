#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace autd {

/// Failure categories shared by every module. The CLI maps these onto exit
/// codes, so keep the list in sync with `exit_code_for`.
enum class Errc {
  NonPrime,
  NotIrreducible,
  NotPrimitive,
  DivisionByZero,
  NotASubfield,
  EqualPoints,
  DegreeMismatch,
  SizeLimit,
  GroupTooLarge,
  ConstructionFailed,
  AutMismatch,
  NotSemiregular,
  NotConnected,
  TooSmall,
  InvalidSpec,
  RecoveryFailed,
  SearchExhausted,
  SearchBudgetExceeded,
  CollisionDetected,
  SharpUnsatisfied,
  PreconditionViolated,
  NoMajority,
  ClassificationMismatch,
  OracleInconsistent,
  ParseError,
  InvalidArgument,
};

inline std::string_view errc_name(Errc e) {
  switch (e) {
    case Errc::NonPrime: return "NonPrime";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::NotPrimitive: return "NotPrimitive";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NotASubfield: return "NotASubfield";
    case Errc::EqualPoints: return "EqualPoints";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::SizeLimit: return "SizeLimit";
    case Errc::GroupTooLarge: return "GroupTooLarge";
    case Errc::ConstructionFailed: return "ConstructionFailed";
    case Errc::AutMismatch: return "AutMismatch";
    case Errc::NotSemiregular: return "NotSemiregular";
    case Errc::NotConnected: return "NotConnected";
    case Errc::TooSmall: return "TooSmall";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::RecoveryFailed: return "RecoveryFailed";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case Errc::CollisionDetected: return "CollisionDetected";
    case Errc::SharpUnsatisfied: return "SharpUnsatisfied";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::NoMajority: return "NoMajority";
    case Errc::ClassificationMismatch: return "ClassificationMismatch";
    case Errc::OracleInconsistent: return "OracleInconsistent";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace autd
