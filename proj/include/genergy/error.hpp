#pragma once

#include <stdexcept>
#include <string>

namespace genergy {

/// Broad failure classes. The CLI maps these onto process exit codes.
enum class ErrorKind {
  invalid_argument,
  infeasible,
  format,
  unsupported,
  budget_exhausted,
  not_found,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::format: return "format";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::budget_exhausted: return "budget-exhausted";
    case ErrorKind::not_found: return "not-found";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the graph6 decoder; carries the byte offset of the fault.
class FormatError : public Error {
 public:
  FormatError(std::size_t position, const std::string& what)
      : Error(ErrorKind::format, what + " (at byte " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace genergy
