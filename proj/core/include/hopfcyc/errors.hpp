#pragma once

#include <stdexcept>
#include <string>

namespace hc {

enum class ErrorKind {
  ShapeMismatch,
  SubspaceNotContained,
  BracketingMismatch,
  NotClosed,
  CoalgebraNotInduced,
  IllDefined,
  ConjugationFailure,
  NotAComplex,
  ChainMapFailure,
  ActionNotDescended,
  NotInvariantTrace,
  MismatchWithAW,
  NotACocycle,
  DegreeCapExceeded,
  ParseError,
  UnresolvedName,
  DimensionMismatch,
  InvalidArgument,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hc
