#pragma once

#include <stdexcept>
#include <string>

namespace subhyp {

enum class ErrorKind {
  EmptySide,
  NotSubmodular,
  InvalidHypergraph,
  ArityTooLarge,
  NoConvergence,
  ConstantInput,
  NotConnected,
  TooLarge,
  DegenerateEmbedding,
  NotGraph,
  ParseError,
  EmptyHypergraph,
  LabelArityMismatch,
  Config,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` lets callers (and the CLI
/// exit-code mapping) dispatch without a class per failure mode.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptySide: return "EmptySide";
    case ErrorKind::NotSubmodular: return "NotSubmodular";
    case ErrorKind::InvalidHypergraph: return "InvalidHypergraph";
    case ErrorKind::ArityTooLarge: return "ArityTooLarge";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ConstantInput: return "ConstantInput";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::DegenerateEmbedding: return "DegenerateEmbedding";
    case ErrorKind::NotGraph: return "NotGraph";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyHypergraph: return "EmptyHypergraph";
    case ErrorKind::LabelArityMismatch: return "LabelArityMismatch";
    case ErrorKind::Config: return "Config";
  }
  return "Unknown";
}

}  // namespace subhyp
