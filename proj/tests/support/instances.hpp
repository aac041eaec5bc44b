#pragma once

// Random grammars and graphs for property tests, plus a reference
// membership oracle that works on arbitrary grammars without normalizing.

#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "cflr/grammar.hpp"
#include "cflr/graph.hpp"

namespace cflr::testing {

using Rng = std::mt19937_64;
using Word = std::vector<Terminal>;

struct GrammarShape {
  std::size_t max_nonterminals = 4;
  std::size_t max_productions = 8;
  std::size_t terminals = 3;
  bool allow_epsilon = true;
};

/// Rules A -> B C, A -> a and optionally S -> eps.
Grammar random_cnf(Rng& rng, const GrammarShape& shape = {});

/// Rules A -> x B y and A -> x with terminal strings x, y; total
/// right-hand-side length at most `max_size`.
Grammar random_linear(Rng& rng, const GrammarShape& shape = {}, std::size_t max_size = 12);

/// Rules A -> a, A -> a B, A -> B a and optionally S -> eps.
Grammar random_talnf(Rng& rng, const GrammarShape& shape = {});

/// Graph with `n` vertices and up to `m` distinct random labeled edges.
LabeledGraph random_graph(Rng& rng, std::size_t n, std::size_t m, std::size_t labels);

/// Path 0 -a-> 1 -a-> ... -a-> n-1.
LabeledGraph path_graph(std::size_t n);

/// Words of length <= `max_len` derivable from every nonterminal, computed
/// as the least fixpoint of truncated concatenation over the raw rules.
class BoundedLanguage {
 public:
  BoundedLanguage(const Grammar& g, std::size_t max_len);

  bool derives(Nonterminal a, const Word& w) const { return words_.at(a).contains(w); }
  bool accepts(const Word& w) const { return derives(start_, w); }
  const std::set<Word>& words(Nonterminal a) const { return words_.at(a); }

 private:
  Nonterminal start_;
  std::vector<std::set<Word>> words_;
};

/// All words over `sigma` letters with length <= max_len.
std::vector<Word> all_words(std::size_t sigma, std::size_t max_len);

/// Walks from u to v with at most `max_len` edges whose trace is accepted
/// from `a`; the shortest such length, or -1.
long shortest_accepted_walk(const LabeledGraph& graph, const BoundedLanguage& lang, Nonterminal a, Vertex u,
                            Vertex v, std::size_t max_len);

}  // namespace cflr::testing
