#include <doctest.h>

#include "cflr/error.hpp"
#include "cflr/grammar.hpp"

using namespace cflr;

namespace {

ErrorKind kind_of(std::string_view text) {
  try {
    parse_grammar(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a parse error");
  return ErrorKind::Syntax;
}

}  // namespace

TEST_CASE("single terminal rule is the smallest TALNF grammar") {
  const Grammar g = parse_grammar("S -> a");
  CHECK(g.nonterminal_count() == 1);
  CHECK(g.productions().size() == 1);
  CHECK(g.form() == GrammarForm::Talnf);
}

TEST_CASE("a^n b^n with two terminals around S is linear, not TALNF") {
  const Grammar g = parse_grammar("S -> a S b | a b");
  CHECK(g.form() == GrammarForm::Linear);
  CHECK(is_linear(g));
  CHECK_FALSE(is_talnf(g));
  CHECK_FALSE(is_cnf(g));
}

TEST_CASE("Dyck grammar with S S is general") {
  CHECK(parse_grammar("S -> S S | ( S ) | eps").form() == GrammarForm::General);
  CHECK(parse_grammar("S -> S S | ( S ) | ε").form() == GrammarForm::General);
}

TEST_CASE("classification of small rule sets") {
  CHECK(classify(parse_grammar("S -> a B\nB -> b")) == GrammarForm::Talnf);
  CHECK(classify(parse_grammar("S -> A B\nA -> a\nB -> b")) == GrammarForm::Cnf);
  CHECK(classify(parse_grammar("S -> a S b")) == GrammarForm::Linear);
  // S -> eps is allowed in CNF even when S appears on a right-hand side.
  CHECK(classify(parse_grammar("S -> S S | L R | eps\nL -> (\nR -> )")) == GrammarForm::Cnf);
  // eps on a non-start symbol is neither.
  CHECK(classify(parse_grammar("S -> a A\nA -> eps")) == GrammarForm::Linear);
}

TEST_CASE("TALNF takes precedence over CNF when both hold") {
  CHECK(classify(parse_grammar("S -> a")) == GrammarForm::Talnf);
  CHECK(classify(parse_grammar("S -> eps")) == GrammarForm::Talnf);
}

TEST_CASE("parser directives and comments") {
  const Grammar g = parse_grammar(
      "# leading comment\n"
      "@start T\n"
      "@terminals x y z\n"
      "S -> x\n"
      "T -> y S   # trailing\n");
  CHECK(g.nonterminals().name(g.start()) == "T");
  CHECK(g.terminal_count() == 3);
  CHECK(g.terminals().name(2) == "z");
}

TEST_CASE("duplicate productions collapse") {
  const Grammar g = parse_grammar("S -> a | a\nS -> a");
  CHECK(g.productions().size() == 1);
}

TEST_CASE("parse errors carry a kind and line") {
  CHECK(kind_of("") == ErrorKind::Syntax);
  CHECK(kind_of("S a") == ErrorKind::Syntax);
  CHECK(kind_of("S -> a |") == ErrorKind::Syntax);
  CHECK(kind_of("S -> a eps") == ErrorKind::Syntax);
  CHECK(kind_of("S -> a -> b") == ErrorKind::Syntax);
  CHECK(kind_of("@bogus x\nS -> a") == ErrorKind::Syntax);
  CHECK(kind_of("@start S\n@start S\nS -> a") == ErrorKind::DuplicateDeclaration);
  CHECK(kind_of("@start Q\nS -> a") == ErrorKind::UndeclaredSymbol);
  CHECK(kind_of("@terminals S\nS -> a") == ErrorKind::DuplicateDeclaration);

  try {
    parse_grammar("S -> a\n\nS b");
    FAIL("expected error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("format and parse round trip") {
  for (const char* text : {"S -> a S b | a b", "S -> S S | ( S ) | eps", "@start B\nA -> a\nB -> A b | eps"}) {
    const Grammar g = parse_grammar(text);
    CHECK(parse_grammar(format_grammar(g)) == g);
  }
}

TEST_CASE("size measure sums right-hand sides") {
  CHECK(parse_grammar("S -> a S b | a b | eps").size_measure() == 5);
}

TEST_CASE("canonical rename ignores nonterminal names") {
  const Grammar a = parse_grammar("S -> a X\nX -> b");
  const Grammar b = parse_grammar("S -> a Y\nY -> b");
  CHECK_FALSE(a == b);
  CHECK(canonical_rename(a) == canonical_rename(b));
}

TEST_CASE("parse_word resolves labels") {
  const Grammar g = parse_grammar("S -> a b");
  CHECK(parse_word(g, "a b") == std::vector<Terminal>{0, 1});
  CHECK(parse_word(g, "").empty());
  CHECK_THROWS_AS(parse_word(g, "a q"), Error);
}
