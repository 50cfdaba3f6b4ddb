#include "mds/error.hpp"

namespace mds {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::InvalidPLMap: return "InvalidPLMap";
    case ErrorKind::IllFormedWord: return "IllFormedWord";
    case ErrorKind::InvalidComplex: return "InvalidComplex";
    case ErrorKind::UnknownCell: return "UnknownCell";
    case ErrorKind::UnknownState: return "UnknownState";
    case ErrorKind::BadChordSpec: return "BadChordSpec";
    case ErrorKind::InvalidFaces: return "InvalidFaces";
    case ErrorKind::NotLoopFree: return "NotLoopFree";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NoTrace: return "NoTrace";
    case ErrorKind::NotExecutionPath: return "NotExecutionPath";
    case ErrorKind::NotCubical: return "NotCubical";
    case ErrorKind::NotFunctorial: return "NotFunctorial";
    case ErrorKind::NotOpen: return "NotOpen";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace mds
