#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eqgs {

enum class ErrorKind {
  // input / structural validation
  InvalidInput,
  BadCycle,
  DanglingEdge,
  NonRegular,
  BadOrientation,
  NotSphereClosed,
  DegenerateEdge,
  // symmetry validation
  NotEquivariant,
  NotARealization,
  NotAnAction,
  BadOrder,
  UnknownIrrep,
  // algebra
  MissingExtension,
  NotASubspace,
  NotInjective,
  LiftFailed,
  NotInImage,
  NotACycle,
  InconsistentStress,
  // internal invariants; these signal numerical or programming failures
  NotIntegral,
  EquivarianceBroken,
  MaxwellViolation,
  InternalInvariant,
  // I/O
  Parse,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Process exit code used by the CLI for an error of this kind:
/// 1 validation failure, 2 I/O or parse, 3 internal invariant violation.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace eqgs
