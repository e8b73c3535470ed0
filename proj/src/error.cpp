#include "eqgs/error.hpp"

namespace eqgs {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::BadCycle: return "BadCycle";
    case ErrorKind::DanglingEdge: return "DanglingEdge";
    case ErrorKind::NonRegular: return "NonRegular";
    case ErrorKind::BadOrientation: return "BadOrientation";
    case ErrorKind::NotSphereClosed: return "NotSphereClosed";
    case ErrorKind::DegenerateEdge: return "DegenerateEdge";
    case ErrorKind::NotEquivariant: return "NotEquivariant";
    case ErrorKind::NotARealization: return "NotARealization";
    case ErrorKind::NotAnAction: return "NotAnAction";
    case ErrorKind::BadOrder: return "BadOrder";
    case ErrorKind::UnknownIrrep: return "UnknownIrrep";
    case ErrorKind::MissingExtension: return "MissingExtension";
    case ErrorKind::NotASubspace: return "NotASubspace";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::LiftFailed: return "LiftFailed";
    case ErrorKind::NotInImage: return "NotInImage";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::InconsistentStress: return "InconsistentStress";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::EquivarianceBroken: return "EquivarianceBroken";
    case ErrorKind::MaxwellViolation: return "MaxwellViolation";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Io:
      return 2;
    case ErrorKind::NotIntegral:
    case ErrorKind::EquivarianceBroken:
    case ErrorKind::MaxwellViolation:
    case ErrorKind::InternalInvariant:
    case ErrorKind::MissingExtension:
    case ErrorKind::NotASubspace:
    case ErrorKind::NotInjective:
    case ErrorKind::LiftFailed:
    case ErrorKind::NotInImage:
      return 3;
    default:
      return 1;
  }
}

}  // namespace eqgs
