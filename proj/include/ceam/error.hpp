#pragma once

#include <stdexcept>
#include <string>

namespace ceam {

/// Failure classes raised by the numerical routines. The CLI maps these onto
/// exit codes, so new kinds need a matching entry there.
enum class ErrorKind {
  InvalidArgument,
  Pole,             // |1 + r e^{2ikx}| below the numerical floor
  OpaqueElement,    // t == 0, no transfer matrix exists
  NonSmooth,        // finite-difference estimates disagree
  Degenerate,       // zero sensitivity, saturated port, Delta == 0 ...
  WindowInversion,  // phase not invertible on the prior window
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ceam
