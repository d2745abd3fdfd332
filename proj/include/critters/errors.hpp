#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "critters/diagnostic.hpp"

namespace critters {

// Base for every error raised by the library. `code()` is stable and is what
// the CLI and service surface to callers.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t position)
      : Error("SyntaxError", message + " (at byte " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& message) : Error("SchemaError", message) {}
};

// Runtime evaluation failures: TypeMismatch, UnknownAttribute,
// TileContextMissing, CounterOverflow, PaletteViolation, EngineAttributeWrite.
class EvalError : public Error {
 public:
  using Error::Error;
};

class BadPath : public Error {
 public:
  explicit BadPath(const std::string& message) : Error("BadPath", message) {}
};

class IllTypedReplacement : public Error {
 public:
  IllTypedReplacement(const std::string& message, std::vector<Diagnostic> diagnostics = {})
      : Error("IllTypedReplacement", message), diagnostics_(std::move(diagnostics)) {}

  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& message) : Error("BudgetExceeded", message) {}
};

class ValidationFailed : public Error {
 public:
  ValidationFailed(const std::string& message, std::vector<Diagnostic> diagnostics)
      : Error("ValidationFailed", message), diagnostics_(std::move(diagnostics)) {}

  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace critters
