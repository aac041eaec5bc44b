#include "cflr/error.hpp"

namespace cflr {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Syntax: return "syntax error";
    case ErrorKind::UndeclaredSymbol: return "undeclared symbol";
    case ErrorKind::DuplicateDeclaration: return "duplicate declaration";
    case ErrorKind::NotLinear: return "grammar not linear";
    case ErrorKind::GrammarNotCnf: return "grammar not in CNF";
    case ErrorKind::GrammarNotTalnf: return "grammar not in TALNF";
    case ErrorKind::UnknownLabel: return "unknown label";
    case ErrorKind::VertexOutOfRange: return "vertex out of range";
    case ErrorKind::NoWitness: return "no witness";
    case ErrorKind::MissingWitness: return "missing witness";
    case ErrorKind::InvalidHandle: return "invalid handle";
    case ErrorKind::UnsupportedForm: return "unsupported grammar form";
    case ErrorKind::BudgetExceeded: return "budget exceeded";
    case ErrorKind::InvalidJson: return "invalid JSON";
    case ErrorKind::Io: return "I/O error";
    case ErrorKind::IndexFormat: return "malformed index file";
  }
  return "unknown error";
}

}  // namespace cflr
