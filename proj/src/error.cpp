#include "urysohn/error.hpp"

namespace urysohn {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroDiagonalViolation: return "ZeroDiagonalViolation";
    case ErrorKind::SymmetryViolation: return "SymmetryViolation";
    case ErrorKind::PositivityViolation: return "PositivityViolation";
    case ErrorKind::TriangleViolation: return "TriangleViolation";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::EmptyAmalgam: return "EmptyAmalgam";
    case ErrorKind::NonIsometricAmalgamPairs: return "NonIsometricAmalgamPairs";
    case ErrorKind::KatetovViolation: return "KatetovViolation";
    case ErrorKind::MissingValue: return "MissingValue";
    case ErrorKind::GridExhausted: return "GridExhausted";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotRealizable: return "NotRealizable";
    case ErrorKind::EmptyAnchorNotSupported: return "EmptyAnchorNotSupported";
    case ErrorKind::NonIsometricAnchor: return "NonIsometricAnchor";
    case ErrorKind::NonPositiveH: return "NonPositiveH";
  }
  return "UnknownError";
}

namespace {

std::string render(ErrorKind kind, const std::vector<std::string>& witness, const std::string& detail) {
  std::string out(to_string(kind));
  if (!witness.empty()) {
    out += '(';
    for (std::size_t i = 0; i < witness.size(); ++i) {
      if (i) out += ',';
      out += witness[i];
    }
    out += ')';
  }
  if (!detail.empty()) out += ": " + detail;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, std::vector<std::string> witness, const std::string& detail)
    : std::runtime_error(render(kind, witness, detail)), kind_(kind), witness_(std::move(witness)) {}

}  // namespace urysohn
