#include "instances.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace cflr::testing {
namespace {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

SymbolTable letters(std::size_t count) {
  SymbolTable t;
  for (std::size_t i = 0; i < count; ++i) t.intern(std::string(1, static_cast<char>('a' + i)));
  return t;
}

SymbolTable capitals(std::size_t count) {
  SymbolTable t;
  t.intern("S");
  for (std::size_t i = 1; i < count; ++i) t.intern(std::string(1, static_cast<char>('A' + i - 1)));
  return t;
}

// Every nonterminal gets at least one rule when the budget allows it so that
// the random grammars are not mostly empty.
template <typename MakeRule>
Grammar assemble(Rng& rng, const GrammarShape& shape, MakeRule make_rule) {
  const std::size_t nts = pick(rng, 1, shape.max_nonterminals);
  const std::size_t count = pick(rng, 1, shape.max_productions);
  std::vector<Production> rules;
  for (std::size_t i = 0; i < count; ++i) {
    const auto lhs = static_cast<Nonterminal>(i < nts ? i : pick(rng, 0, nts - 1));
    rules.push_back(make_rule(lhs, nts));
  }
  std::sort(rules.begin(), rules.end());
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
  return Grammar(letters(shape.terminals), capitals(nts), std::move(rules), 0);
}

Symbol any_terminal(Rng& rng, const GrammarShape& shape) {
  return Symbol::terminal(static_cast<Terminal>(pick(rng, 0, shape.terminals - 1)));
}

Symbol any_nonterminal(Rng& rng, std::size_t nts) {
  return Symbol::nonterminal(static_cast<Nonterminal>(pick(rng, 0, nts - 1)));
}

}  // namespace

Grammar random_cnf(Rng& rng, const GrammarShape& shape) {
  return assemble(rng, shape, [&](Nonterminal lhs, std::size_t nts) {
    if (lhs == 0 && shape.allow_epsilon && coin(rng, 0.15)) return Production{lhs, {}};
    if (coin(rng, 0.45)) return Production{lhs, {any_terminal(rng, shape)}};
    return Production{lhs, {any_nonterminal(rng, nts), any_nonterminal(rng, nts)}};
  });
}

Grammar random_talnf(Rng& rng, const GrammarShape& shape) {
  return assemble(rng, shape, [&](Nonterminal lhs, std::size_t nts) {
    if (lhs == 0 && shape.allow_epsilon && coin(rng, 0.15)) return Production{lhs, {}};
    switch (pick(rng, 0, 2)) {
      case 0: return Production{lhs, {any_terminal(rng, shape)}};
      case 1: return Production{lhs, {any_terminal(rng, shape), any_nonterminal(rng, nts)}};
      default: return Production{lhs, {any_nonterminal(rng, nts), any_terminal(rng, shape)}};
    }
  });
}

Grammar random_linear(Rng& rng, const GrammarShape& shape, std::size_t max_size) {
  for (;;) {
    Grammar g = assemble(rng, shape, [&](Nonterminal lhs, std::size_t nts) {
      Production p{lhs, {}};
      if (shape.allow_epsilon && coin(rng, 0.1)) return p;
      const std::size_t left = pick(rng, 0, 2);
      const std::size_t right = pick(rng, 0, 2);
      const bool with_nt = coin(rng, 0.6);
      for (std::size_t i = 0; i < left; ++i) p.rhs.push_back(any_terminal(rng, shape));
      if (with_nt) p.rhs.push_back(any_nonterminal(rng, nts));
      for (std::size_t i = 0; i < right; ++i) p.rhs.push_back(any_terminal(rng, shape));
      return p;
    });
    if (g.size_measure() <= max_size) return g;
  }
}

LabeledGraph random_graph(Rng& rng, std::size_t n, std::size_t m, std::size_t labels) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i) {
    edges.push_back({static_cast<Vertex>(pick(rng, 0, n - 1)), static_cast<Vertex>(pick(rng, 0, n - 1)),
                     static_cast<Terminal>(pick(rng, 0, labels - 1))});
  }
  return LabeledGraph(n, labels, std::move(edges));
}

LabeledGraph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1), 0});
  return LabeledGraph(n, 1, std::move(edges));
}

BoundedLanguage::BoundedLanguage(const Grammar& g, std::size_t max_len)
    : start_(g.start()), words_(g.nonterminal_count()) {
  // Words of one symbol sequence, given the current per-nonterminal sets.
  auto expand = [&](const std::vector<Symbol>& rhs) {
    std::set<Word> acc{Word{}};
    for (Symbol s : rhs) {
      std::set<Word> next;
      if (s.is_terminal()) {
        for (Word w : acc) {
          if (w.size() == max_len) continue;
          w.push_back(s.id);
          next.insert(std::move(w));
        }
      } else {
        for (const Word& prefix : acc) {
          for (const Word& suffix : words_[s.id]) {
            if (prefix.size() + suffix.size() > max_len) continue;
            Word w = prefix;
            w.insert(w.end(), suffix.begin(), suffix.end());
            next.insert(std::move(w));
          }
        }
      }
      acc = std::move(next);
      if (acc.empty()) break;
    }
    return acc;
  };

  for (bool changed = true; changed;) {
    changed = false;
    for (const Production& p : g.productions()) {
      for (const Word& w : expand(p.rhs)) changed |= words_[p.lhs].insert(w).second;
    }
  }
}

std::vector<Word> all_words(std::size_t sigma, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() == max_len) continue;
    for (Terminal a = 0; a < sigma; ++a) {
      Word w = out[i];
      w.push_back(a);
      out.push_back(std::move(w));
    }
  }
  return out;
}

long shortest_accepted_walk(const LabeledGraph& graph, const BoundedLanguage& lang, Nonterminal a, Vertex u,
                            Vertex v, std::size_t max_len) {
  // Breadth-first over (vertex, trace) so the first hit is the shortest.
  std::deque<std::pair<Vertex, Word>> frontier{{u, {}}};
  std::set<std::pair<Vertex, Word>> seen{{u, {}}};
  while (!frontier.empty()) {
    auto [at, trace] = std::move(frontier.front());
    frontier.pop_front();
    if (at == v && lang.derives(a, trace)) return static_cast<long>(trace.size());
    if (trace.size() == max_len) continue;
    for (const Edge& e : graph.edges()) {
      if (e.u != at) continue;
      Word next = trace;
      next.push_back(e.label);
      if (seen.emplace(e.v, next).second) frontier.emplace_back(e.v, std::move(next));
    }
  }
  return -1;
}

}  // namespace cflr::testing
