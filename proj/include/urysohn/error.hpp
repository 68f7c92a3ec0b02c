#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace urysohn {

enum class ErrorKind {
  // metric axioms
  ZeroDiagonalViolation,
  SymmetryViolation,
  PositivityViolation,
  TriangleViolation,
  // structural
  MalformedInput,
  UnknownLabel,
  DuplicateLabel,
  EmptySubset,
  // amalgam
  EmptyAmalgam,
  NonIsometricAmalgamPairs,
  KatetovViolation,
  MissingValue,
  // generator / builder
  GridExhausted,
  BudgetExceeded,
  NotRealizable,
  EmptyAnchorNotSupported,
  NonIsometricAnchor,
  // dap harness
  NonPositiveH,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind);

/// Domain error carrying the violated rule and the labels (or values) that
/// witness it. All library operations report failures through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::vector<std::string> witness, const std::string& detail = {});

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> witness_;
};

}  // namespace urysohn
