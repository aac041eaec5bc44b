#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cflr {

using Terminal = std::uint32_t;
using Nonterminal = std::uint32_t;

/// A grammar symbol. Terminal and nonterminal ids live in separate dense
/// spaces, so the kind is part of the identity.
struct Symbol {
  enum class Kind : std::uint8_t { Terminal, Nonterminal };

  Kind kind = Kind::Terminal;
  std::uint32_t id = 0;

  static constexpr Symbol terminal(Terminal id) noexcept { return {Kind::Terminal, id}; }
  static constexpr Symbol nonterminal(Nonterminal id) noexcept { return {Kind::Nonterminal, id}; }

  constexpr bool is_terminal() const noexcept { return kind == Kind::Terminal; }
  constexpr bool is_nonterminal() const noexcept { return kind == Kind::Nonterminal; }

  friend constexpr auto operator<=>(const Symbol&, const Symbol&) = default;
};

struct Production {
  Nonterminal lhs = 0;
  std::vector<Symbol> rhs;  // empty means an epsilon rule

  std::size_t nonterminal_count() const noexcept;

  friend auto operator<=>(const Production&, const Production&) = default;
};

/// Most specific normal form label, precedence TALNF > CNF > Linear > General.
enum class GrammarForm { General, Cnf, Linear, Talnf };

std::string_view to_string(GrammarForm form) noexcept;

/// Ordered name table with dense ids.
class SymbolTable {
 public:
  std::uint32_t intern(std::string_view name);
  std::optional<std::uint32_t> find(std::string_view name) const;
  const std::string& name(std::uint32_t id) const { return names_.at(id); }
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  bool contains(std::string_view name) const { return find(name).has_value(); }

  friend bool operator==(const SymbolTable& a, const SymbolTable& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

/// A context-free grammar (N, Sigma, P, S). Immutable once built.
class Grammar {
 public:
  /// Validates symbol references and computes the form label.
  Grammar(SymbolTable terminals, SymbolTable nonterminals, std::vector<Production> productions,
          Nonterminal start);

  const SymbolTable& terminals() const noexcept { return terminals_; }
  const SymbolTable& nonterminals() const noexcept { return nonterminals_; }
  const std::vector<Production>& productions() const noexcept { return productions_; }
  Nonterminal start() const noexcept { return start_; }
  GrammarForm form() const noexcept { return form_; }

  std::size_t terminal_count() const noexcept { return terminals_.size(); }
  std::size_t nonterminal_count() const noexcept { return nonterminals_.size(); }

  /// Total right-hand-side length.
  std::size_t size_measure() const noexcept;

  bool has_start_epsilon() const noexcept;

  /// Same rules, different start symbol. Used to check sub-languages L(A).
  Grammar with_start(Nonterminal start) const;

  std::string symbol_name(Symbol s) const;

  friend bool operator==(const Grammar& a, const Grammar& b);

 private:
  SymbolTable terminals_;
  SymbolTable nonterminals_;
  std::vector<Production> productions_;
  Nonterminal start_;
  GrammarForm form_;
};

/// Parses the line-oriented grammar format (`LHS -> sym ... | ...`).
Grammar parse_grammar(std::string_view text);

/// Writes a grammar in the same format `parse_grammar` accepts.
std::string format_grammar(const Grammar& g);

bool is_linear(const Grammar& g) noexcept;
bool is_cnf(const Grammar& g) noexcept;
bool is_talnf(const Grammar& g) noexcept;
GrammarForm classify(const Grammar& g) noexcept;

/// Chomsky normal form via TERM, BIN, DEL, UNIT. Original nonterminals keep
/// their ids; fresh ones are appended.
Grammar to_cnf(const Grammar& g);

/// Terminal-anchored linear normal form. Throws NotLinear when some rule has
/// two or more nonterminals.
Grammar to_talnf(const Grammar& g);

/// Factor c in |P(to_talnf(g))| <= c * size_measure(g) + 1. Measured, not
/// proven: the worst ratio seen over 200k random grammars with at most four
/// nonterminals and size_measure <= 12 was 4.63. Unit and epsilon elimination
/// copy rule bodies per nonterminal, so larger grammars can exceed it.
inline constexpr std::size_t kTalnfSizeFactor = 5;

/// CYK membership test for L(start). Non-CNF grammars are converted first.
bool recognize(const Grammar& g, std::span<const Terminal> word);

/// Maps whitespace separated terminal names to ids; throws UnknownLabel.
std::vector<Terminal> parse_word(const Grammar& g, std::string_view text);

/// Renames nonterminals N0, N1, ... in breadth-first order from the start
/// symbol and sorts the rules, so grammars equal up to naming and rule order
/// usually compare equal. Unreachable nonterminals are numbered last.
Grammar canonical_rename(const Grammar& g);

}  // namespace cflr
