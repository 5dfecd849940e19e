#pragma once

#include <stdexcept>
#include <string>

namespace ucp {

enum class ErrorKind {
  Structural,
  Data,
  Domain,
  Configuration,
  Instability,
  Resolution,
  Unsupported,
  Precondition,
  InsufficientData,
  Schema,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `module` names the component whose
/// precondition or contract was violated (e.g. "wave", "carleman").
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

}  // namespace ucp
