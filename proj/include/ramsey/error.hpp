#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ramsey {

enum class ErrorKind {
  SelfLoop,
  NotAntisymmetric,
  NotSquare,
  BadOrder,
  NotPrime,
  NotTournamentResidueSet,
  OrderTooSmall,
  NoSuchEdge,
  KTooSmall,
  SizeOverflow,
  ParseError,
  InvariantViolation,
  UnknownName,
  UnknownSmallerRamsey,
  IncompletePartCatalog,
  SolverCrashed,
  SolverMissing,
  NotSat,
  InvalidArgument,
};

inline auto to_string(ErrorKind kind) -> std::string_view {
  switch (kind) {
  case ErrorKind::SelfLoop: return "SelfLoop";
  case ErrorKind::NotAntisymmetric: return "NotAntisymmetric";
  case ErrorKind::NotSquare: return "NotSquare";
  case ErrorKind::BadOrder: return "BadOrder";
  case ErrorKind::NotPrime: return "NotPrime";
  case ErrorKind::NotTournamentResidueSet: return "NotTournamentResidueSet";
  case ErrorKind::OrderTooSmall: return "OrderTooSmall";
  case ErrorKind::NoSuchEdge: return "NoSuchEdge";
  case ErrorKind::KTooSmall: return "KTooSmall";
  case ErrorKind::SizeOverflow: return "SizeOverflow";
  case ErrorKind::ParseError: return "ParseError";
  case ErrorKind::InvariantViolation: return "InvariantViolation";
  case ErrorKind::UnknownName: return "UnknownName";
  case ErrorKind::UnknownSmallerRamsey: return "UnknownSmallerRamsey";
  case ErrorKind::IncompletePartCatalog: return "IncompletePartCatalog";
  case ErrorKind::SolverCrashed: return "SolverCrashed";
  case ErrorKind::SolverMissing: return "SolverMissing";
  case ErrorKind::NotSat: return "NotSat";
  case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library. `kind()` is the stable,
/// machine-checkable part; the message is for humans.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  auto kind() const noexcept -> ErrorKind { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace ramsey
