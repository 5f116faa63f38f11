#include "hopfcyc/scalar.hpp"

#include <cctype>

#include "hopfcyc/errors.hpp"

namespace hc {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::SubspaceNotContained: return "SubspaceNotContained";
    case ErrorKind::BracketingMismatch: return "BracketingMismatch";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::CoalgebraNotInduced: return "CoalgebraNotInduced";
    case ErrorKind::IllDefined: return "IllDefined";
    case ErrorKind::ConjugationFailure: return "ConjugationFailure";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::ChainMapFailure: return "ChainMapFailure";
    case ErrorKind::ActionNotDescended: return "ActionNotDescended";
    case ErrorKind::NotInvariantTrace: return "NotInvariantTrace";
    case ErrorKind::MismatchWithAW: return "MismatchWithAW";
    case ErrorKind::NotACocycle: return "NotACocycle";
    case ErrorKind::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnresolvedName: return "UnresolvedName";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den)))
    throw Error(ErrorKind::ParseError, "malformed scalar '" + std::string(text) + "'");
  Integer n(std::string(num), 10);
  Integer d(1);
  if (slash != std::string_view::npos) d = Integer(std::string(den), 10);
  if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  Scalar s(negative ? Integer(-n) : n, d);
  s.canonicalize();
  return s;
}

std::string to_string(const Scalar& s) { return s.get_str(10); }

}  // namespace hc
