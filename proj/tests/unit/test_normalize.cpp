#include <doctest.h>

#include "cflr/error.hpp"
#include "cflr/grammar.hpp"
#include "instances.hpp"

using namespace cflr;
using testing::BoundedLanguage;

namespace {

// Agreement of two grammars on every word up to `len` over their alphabet.
bool same_language(const Grammar& a, const Grammar& b, std::size_t len) {
  const BoundedLanguage la(a, len);
  const BoundedLanguage lb(b, len);
  for (const auto& w : testing::all_words(a.terminal_count(), len)) {
    if (la.accepts(w) != lb.accepts(w)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("two-terminal rule binarizes into A B with terminal rules") {
  const Grammar cnf = to_cnf(parse_grammar("S -> a b"));
  CHECK(is_cnf(cnf));
  CHECK(cnf.productions().size() == 3);
  CHECK(canonical_rename(cnf) == canonical_rename(parse_grammar("S -> A B\nA -> a\nB -> b")));
}

TEST_CASE("CNF of a^n b^n recognizes exactly a^n b^n") {
  const Grammar g = parse_grammar("S -> a S b | a b");
  const Grammar cnf = to_cnf(g);
  CHECK(classify(cnf) == GrammarForm::Cnf);
  CHECK(recognize(cnf, parse_word(g, "a b")));
  CHECK(recognize(cnf, parse_word(g, "a a b b")));
  CHECK_FALSE(recognize(cnf, parse_word(g, "a a b")));
  CHECK(same_language(g, cnf, 6));
}

TEST_CASE("epsilon-only grammar stays as is") {
  const Grammar g = parse_grammar("S -> eps");
  const Grammar cnf = to_cnf(g);
  CHECK(cnf.productions().size() == 1);
  CHECK(cnf.productions()[0].rhs.empty());
}

TEST_CASE("TALNF of a^n b^n has the four expected rule shapes") {
  const Grammar g = parse_grammar("S -> a S b | a b");
  const Grammar t = to_talnf(g);
  CHECK(classify(t) == GrammarForm::Talnf);
  CHECK(t.productions().size() == 4);
  CHECK(canonical_rename(t) == canonical_rename(parse_grammar("S -> a X | a T\nX -> S b\nT -> b")));
  CHECK(recognize(t, parse_word(g, "a b")));
  CHECK(recognize(t, parse_word(g, "a a b b")));
  CHECK_FALSE(recognize(t, parse_word(g, "a b a b")));
}

TEST_CASE("TALNF leaves TALNF input unchanged") {
  const Grammar g = parse_grammar("S -> a");
  CHECK(to_talnf(g) == g);
}

TEST_CASE("prefix chain ends in a suffix-chain link") {
  const Grammar g = parse_grammar("A -> a b B c\nB -> d");
  const Grammar t = to_talnf(g);
  CHECK(is_talnf(t));
  // A -> a A1, A1 -> b B1, B1 -> B c, plus B -> d.
  CHECK(canonical_rename(t) == canonical_rename(parse_grammar("A -> a P\nP -> b Q\nQ -> B c\nB -> d")));
  CHECK(same_language(g, t, 6));
}

TEST_CASE("non-linear grammars are rejected by TALNF conversion") {
  try {
    to_talnf(parse_grammar("S -> S S | a"));
    FAIL("expected NotLinear");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotLinear);
  }
}

TEST_CASE("nullable start on a right-hand side gets a fresh start") {
  const Grammar g = parse_grammar("S -> a S | eps");
  const Grammar cnf = to_cnf(g);
  CHECK(is_cnf(cnf));
  CHECK(same_language(g, cnf, 6));
  const Grammar t = to_talnf(g);
  CHECK(is_talnf(t));
  CHECK(same_language(g, t, 6));
}

TEST_CASE("unit chains and nullable middles") {
  const Grammar g = parse_grammar("S -> A\nA -> B\nB -> a B b | C\nC -> eps | c");
  CHECK(same_language(g, to_cnf(g), 6));
  CHECK(same_language(g, to_talnf(g), 6));
}

TEST_CASE("recognizer on the empty word") {
  CHECK(recognize(parse_grammar("S -> S S | ( S ) | eps"), std::vector<Terminal>{}));
  CHECK_FALSE(recognize(parse_grammar("S -> a S b | a b"), std::vector<Terminal>{}));
  const Grammar g = parse_grammar("S -> a S b | a b");
  CHECK_FALSE(recognize(g, parse_word(g, "a b a")));
}
