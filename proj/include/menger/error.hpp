#pragma once

#include <stdexcept>
#include <string>

namespace menger {

enum class ErrorKind {
  BadParams,
  BadPreset,
  BadInput,
  BadRegime,
  DegenerateTriple,
  SelfIntersection,
  NotArclength,
  DegenerateConstraint,
  ZeroSeminorm,
  StepFailure,
  QuadratureNotConverged,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  // numeric failures map to exit code 2 in the CLI, everything else to 1
  bool is_numeric() const {
    return kind_ == ErrorKind::StepFailure || kind_ == ErrorKind::QuadratureNotConverged;
  }

 private:
  ErrorKind kind_;
};

}  // namespace menger
