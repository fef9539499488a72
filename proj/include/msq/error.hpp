#pragma once

#include <stdexcept>
#include <string>

namespace msq {

/// Coarse failure categories, mapped to process exit codes by the CLI:
/// usage -> 2, domain -> 1, resource -> 3.
enum class ErrorCategory { usage, domain, resource };

/// Library-wide exception type. Domain errors cover violated preconditions,
/// infeasible strategies, and malformed inputs whose shape is otherwise
/// valid; usage errors cover bad invocations; resource errors cover
/// exceeded instance caps.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  auto category() const -> ErrorCategory { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void throw_usage(const std::string& message) {
  throw Error(ErrorCategory::usage, message);
}

[[noreturn]] inline void throw_domain(const std::string& message) {
  throw Error(ErrorCategory::domain, message);
}

[[noreturn]] inline void throw_resource(const std::string& message) {
  throw Error(ErrorCategory::resource, message);
}

}  // namespace msq
