#pragma once

#include <stdexcept>
#include <string>

namespace qtopo {

// Precondition violations (bad modulus, illegal move, malformed index) are
// reported as std::invalid_argument. The two types below carry distinct
// meaning for callers such as the CLI, which maps them to exit codes.

// Brute-force enumeration would exceed the configured term budget.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data does not match the expected JSON schema. `pointer` is the JSON
// pointer of the offending field ("" for the document root).
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string pointer, const std::string& what)
      : std::runtime_error(pointer.empty() ? what : pointer + ": " + what),
        pointer_(std::move(pointer)) {}

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

// Geometric input is too degenerate for an exact integer answer.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qtopo
