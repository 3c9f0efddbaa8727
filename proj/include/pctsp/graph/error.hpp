#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pctsp {

/// Error categories raised across the suite.
enum class Errc {
  NotSimple,
  MissingEdge,
  RootAbsent,
  TooShort,
  InvariantViolation,
  RootIsolated,
  NoDisjointPair,
  InvalidCandidate,
  Precondition,
  TrivialInfeasible,
  NumericalFailure,
  TooLarge,
  ParseError,
  UnsupportedEdgeWeightType,
  MalformedSection,
  CannotReachTarget,
  Overflow,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NotSimple: return "NotSimple";
    case Errc::MissingEdge: return "MissingEdge";
    case Errc::RootAbsent: return "RootAbsent";
    case Errc::TooShort: return "TooShort";
    case Errc::InvariantViolation: return "InvariantViolation";
    case Errc::RootIsolated: return "RootIsolated";
    case Errc::NoDisjointPair: return "NoDisjointPair";
    case Errc::InvalidCandidate: return "InvalidCandidate";
    case Errc::Precondition: return "Precondition";
    case Errc::TrivialInfeasible: return "TrivialInfeasible";
    case Errc::NumericalFailure: return "NumericalFailure";
    case Errc::TooLarge: return "TooLarge";
    case Errc::ParseError: return "ParseError";
    case Errc::UnsupportedEdgeWeightType: return "UnsupportedEdgeWeightType";
    case Errc::MalformedSection: return "MalformedSection";
    case Errc::CannotReachTarget: return "CannotReachTarget";
    case Errc::Overflow: return "Overflow";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace pctsp
