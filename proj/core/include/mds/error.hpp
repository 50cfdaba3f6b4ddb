#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mds {

enum class ErrorKind {
  DomainMismatch,
  EndpointMismatch,
  NotSurjective,
  NotMonotone,
  InvalidPLMap,
  IllFormedWord,
  InvalidComplex,
  UnknownCell,
  UnknownState,
  BadChordSpec,
  InvalidFaces,
  NotLoopFree,
  UnsupportedDimension,
  CapExceeded,
  NoTrace,
  NotExecutionPath,
  NotCubical,
  NotFunctorial,
  NotOpen,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` is the stable error class.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mds
