#include "catquot/error.hpp"

namespace catquot {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownId: return "UnknownId";
    case ErrorKind::MismatchedEndpoints: return "MismatchedEndpoints";
    case ErrorKind::MissingComposite: return "MissingComposite";
    case ErrorKind::ConflictingComposite: return "ConflictingComposite";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::NotAFunctor: return "NotAFunctor";
    case ErrorKind::NoProducts: return "NoProducts";
    case ErrorKind::NoAdjoint: return "NoAdjoint";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::Empty: return "Empty";
    case ErrorKind::NotUpwardClosed: return "NotUpwardClosed";
    case ErrorKind::NotDirected: return "NotDirected";
    case ErrorKind::NotSubterminal: return "NotSubterminal";
    case ErrorKind::SymbolicFilter: return "SymbolicFilter";
    case ErrorKind::MissingProducts: return "MissingProducts";
    case ErrorKind::OptimizationMismatch: return "OptimizationMismatch";
    case ErrorKind::NotProductStable: return "NotProductStable";
    case ErrorKind::PreservationFailure: return "PreservationFailure";
    case ErrorKind::NotFibrant: return "NotFibrant";
    case ErrorKind::NotStable: return "NotStable";
    case ErrorKind::FLCRequired: return "FLCRequired";
    case ErrorKind::AxiomFailure: return "AxiomFailure";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::UnsupportedTailComposition: return "UnsupportedTailComposition";
    case ErrorKind::UnsupportedTail: return "UnsupportedTail";
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorKind::NoLift: return "NoLift";
    case ErrorKind::IncoherentTransitions: return "IncoherentTransitions";
    case ErrorKind::NoTerminal: return "NoTerminal";
    case ErrorKind::IllTypedParameter: return "IllTypedParameter";
    case ErrorKind::NotDiscrete: return "NotDiscrete";
    case ErrorKind::NoTerminalInT: return "NoTerminalInT";
    case ErrorKind::NoTerminalInS: return "NoTerminalInS";
    case ErrorKind::NoExponentials: return "NoExponentials";
    case ErrorKind::NotNatural: return "NotNatural";
  }
  return "Unknown";
}

std::string describe(const std::vector<Violation>& vs) {
  std::string out;
  for (const auto& v : vs) {
    if (!out.empty()) out += "; ";
    out += std::string(to_string(v.kind)) + "(" + v.detail + ")";
  }
  return out;
}

}  // namespace catquot
