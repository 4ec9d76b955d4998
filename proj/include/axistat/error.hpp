#pragma once

#include <stdexcept>
#include <string>

namespace axistat {

enum class ErrorKind {
  InvalidArgument,
  OriginPoint,
  Regularity,
  DomainViolation,
  NotConverged,
  StepUnderflow,
  Io,
};

/// Single exception type for the library; `kind()` lets callers map failures
/// to exit codes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace axistat
