#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace catquot {

enum class ErrorKind {
  // input / structure
  ParseError,
  UnknownId,
  MismatchedEndpoints,
  MissingComposite,
  ConflictingComposite,
  NonAssociative,
  NotAFunctor,
  // universal constructions
  NoProducts,
  NoAdjoint,
  SearchExhausted,
  // filters
  Empty,
  NotUpwardClosed,
  NotDirected,
  NotSubterminal,
  SymbolicFilter,
  // quotient
  MissingProducts,
  OptimizationMismatch,
  NotProductStable,
  PreservationFailure,
  // model
  NotFibrant,
  NotStable,
  FLCRequired,
  AxiomFailure,
  // germ
  EndpointMismatch,
  UnsupportedTailComposition,
  UnsupportedTail,
  UnsupportedFamily,
  // fibrations
  NoLift,
  IncoherentTransitions,
  NoTerminal,
  // comprehension
  IllTypedParameter,
  NotDiscrete,
  NoTerminalInT,
  NoTerminalInS,
  // universes
  NoExponentials,
  NotNatural,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

// A single law violation with the offending ids spelled out.
struct Violation {
  ErrorKind kind;
  std::string detail;
};

std::string describe(const std::vector<Violation>& vs);

}  // namespace catquot
