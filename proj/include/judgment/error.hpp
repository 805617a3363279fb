#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace judgment {

/// Every failure the library reports is one of these kinds. The CLI prints
/// the kind name alongside the message, so names are part of the interface.
enum class ErrorKind {
  // prop_space
  DuplicateAtom,
  TooManyAtoms,
  EmptyAtomList,
  InvalidAtomName,
  SyntaxError,
  UnknownAtom,
  SpaceMismatch,
  // circumstance
  Inconceivable,
  InvalidTier,
  UnknownWorld,
  WeightOutOfRange,
  // info / evidence
  IndeterminateForm,
  DegenerateInput,
  NotPositivelyCorrelated,
  NotNegativelyCorrelated,
  ProbabilitySumExceedsOne,
  Infeasible,
  NonFiniteContribution,
  InvalidThreshold,
  // implication
  PreconditionViolated,
  InsufficientInformation,
  NotCounterfactual,
  // scenarios
  ConfigInvalid,
  // cli_io
  FileNotFound,
  FormatVersionMismatch,
  CorruptRationals,
  CorruptSession,
  NothingToUndo,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicateAtom: return "DuplicateAtom";
    case ErrorKind::TooManyAtoms: return "TooManyAtoms";
    case ErrorKind::EmptyAtomList: return "EmptyAtomList";
    case ErrorKind::InvalidAtomName: return "InvalidAtomName";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownAtom: return "UnknownAtom";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::Inconceivable: return "Inconceivable";
    case ErrorKind::InvalidTier: return "InvalidTier";
    case ErrorKind::UnknownWorld: return "UnknownWorld";
    case ErrorKind::WeightOutOfRange: return "WeightOutOfRange";
    case ErrorKind::IndeterminateForm: return "IndeterminateForm";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::NotPositivelyCorrelated: return "NotPositivelyCorrelated";
    case ErrorKind::NotNegativelyCorrelated: return "NotNegativelyCorrelated";
    case ErrorKind::ProbabilitySumExceedsOne: return "ProbabilitySumExceedsOne";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::NonFiniteContribution: return "NonFiniteContribution";
    case ErrorKind::InvalidThreshold: return "InvalidThreshold";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::InsufficientInformation: return "InsufficientInformation";
    case ErrorKind::NotCounterfactual: return "NotCounterfactual";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::FormatVersionMismatch: return "FormatVersionMismatch";
    case ErrorKind::CorruptRationals: return "CorruptRationals";
    case ErrorKind::CorruptSession: return "CorruptSession";
    case ErrorKind::NothingToUndo: return "NothingToUndo";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace judgment
