#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cflr {

/// Domain error categories. Every error thrown by the library carries one.
enum class ErrorKind {
  Syntax,
  UndeclaredSymbol,
  DuplicateDeclaration,
  NotLinear,
  GrammarNotCnf,
  GrammarNotTalnf,
  UnknownLabel,
  VertexOutOfRange,
  NoWitness,
  MissingWitness,
  InvalidHandle,
  UnsupportedForm,
  BudgetExceeded,
  InvalidJson,
  Io,
  IndexFormat,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with the offending 1-based line number.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, const std::string& message)
      : Error(ErrorKind::Syntax, "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cflr
