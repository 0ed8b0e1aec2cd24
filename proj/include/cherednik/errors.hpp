#pragma once

#include <stdexcept>
#include <string>

namespace cherednik {

// Error taxonomy. The CLI maps categories to exit codes:
// invalid input -> 2, resource/degree caps -> 3, internal certificate failures -> 4.
enum class ErrorCode {
  DivisionByZero,
  IncompatibleScalars,
  ZeroPolynomial,
  GroupTooLarge,
  NotInvertible,
  DictionaryMismatch,
  NeedExplicitIrreps,
  NotARepresentation,
  UnknownGenerator,
  IncompatibleElements,
  TruncationExceeded,
  NotInvariant,
  DegreeCapExceeded,
  UnsupportedShape,
  UnsupportedDimension,
  NotMelys,
  HypothesesNotMet,
  ClassificationFailure,
  IllegalShift,
  ConfigError,
  InternalError,
};

enum class ErrorClass { InvalidInput, CapExceeded, Internal };

inline ErrorClass classify(ErrorCode c) {
  switch (c) {
    case ErrorCode::GroupTooLarge:
    case ErrorCode::DegreeCapExceeded:
    case ErrorCode::TruncationExceeded:
    case ErrorCode::UnsupportedShape:
    case ErrorCode::UnsupportedDimension:
      return ErrorClass::CapExceeded;
    case ErrorCode::DictionaryMismatch:
    case ErrorCode::InternalError:
      return ErrorClass::Internal;
    default:
      return ErrorClass::InvalidInput;
  }
}

inline const char* code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::IncompatibleScalars: return "IncompatibleScalars";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::DictionaryMismatch: return "DictionaryMismatch";
    case ErrorCode::NeedExplicitIrreps: return "NeedExplicitIrreps";
    case ErrorCode::NotARepresentation: return "NotARepresentation";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::IncompatibleElements: return "IncompatibleElements";
    case ErrorCode::TruncationExceeded: return "TruncationExceeded";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::NotMelys: return "NotMelys";
    case ErrorCode::HypothesesNotMet: return "HypothesesNotMet";
    case ErrorCode::ClassificationFailure: return "ClassificationFailure";
    case ErrorCode::IllegalShift: return "IllegalShift";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Config errors carry a source position (1-based line/column).
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line, int col)
      : Error(ErrorCode::ConfigError,
              "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + what),
        line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace cherednik
