#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mf {

enum class ErrorKind {
  NonPrimeModulus,
  NoSuchRoot,
  BadOrder,
  NotARoot,
  NotInvertible,
  SingularGenerator,
  OrderCapExceeded,
  CharacteristicDividesOrder,
  NotAGroup,
  InjectivityFailure,
  AuxPrimeSearchFailed,
  MismatchDetected,
  NonLinearCharacter,
  NonAbelianUnsupported,
  GenerationGap,
  RelationFailure,
  NotAnSOP,
  NotFound,
  ParseError,
  ValidationError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorKind::NoSuchRoot: return "NoSuchRoot";
    case ErrorKind::BadOrder: return "BadOrder";
    case ErrorKind::NotARoot: return "NotARoot";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::SingularGenerator: return "SingularGenerator";
    case ErrorKind::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorKind::CharacteristicDividesOrder: return "CharacteristicDividesOrder";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::InjectivityFailure: return "InjectivityFailure";
    case ErrorKind::AuxPrimeSearchFailed: return "AuxPrimeSearchFailed";
    case ErrorKind::MismatchDetected: return "MismatchDetected";
    case ErrorKind::NonLinearCharacter: return "NonLinearCharacter";
    case ErrorKind::NonAbelianUnsupported: return "NonAbelianUnsupported";
    case ErrorKind::GenerationGap: return "GenerationGap";
    case ErrorKind::RelationFailure: return "RelationFailure";
    case ErrorKind::NotAnSOP: return "NotAnSOP";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

/// Exit-code class of an error kind: 1 check failure, 2 input error,
/// 3 internal assertion (a theorem-level identity was contradicted).
inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::GenerationGap:
    case ErrorKind::NotFound:
      return 1;
    case ErrorKind::InjectivityFailure:
    case ErrorKind::MismatchDetected:
    case ErrorKind::RelationFailure:
      return 3;
    default:
      return 2;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::string witness_;
};

}  // namespace mf
