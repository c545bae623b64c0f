#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace towerlift {

enum class ErrorKind {
  DomainMismatch,
  InvalidSubstitution,
  BoundaryUndefined,
  InvalidTower,
  ImproperIdeal,
  Precondition,
  BudgetExceeded,
  Unsupported,
  NotInIdeal,
  Mismatch,
  Parse,
  IncompatibleBoundary,
  NotInModule,
  NotEulerDatum,
  LevelMismatch,
};

std::string_view to_string(ErrorKind kind);

/// All library failures are reported through this one exception type; the
/// kind drives CLI exit codes and the machine-readable reason.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace towerlift
