#include <algorithm>

#include "cflr/grammar.hpp"

namespace cflr {
namespace {

// CYK over a CNF grammar. The start symbol may carry an epsilon rule while
// also occurring on right-hand sides, so nullable symbols are closed over
// within each span.
bool cyk(const Grammar& g, std::span<const Terminal> word) {
  const std::size_t nts = g.nonterminal_count();

  std::vector<char> nullable(nts, 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions()) {
      if (nullable[p.lhs]) continue;
      const bool all = std::all_of(p.rhs.begin(), p.rhs.end(), [&](Symbol s) {
        return s.is_nonterminal() && nullable[s.id];
      });
      if (all) nullable[p.lhs] = changed = true;
    }
  }
  const std::size_t len = word.size();
  if (len == 0) return nullable[g.start()] != 0;

  std::vector<const Production*> binary;
  for (const auto& p : g.productions()) {
    if (p.rhs.size() == 2) binary.push_back(&p);
  }

  // table[(i * (len + 1) + j) * nts + A]: A derives word[i, j)
  std::vector<char> table((len + 1) * (len + 1) * nts, 0);
  auto cell = [&](std::size_t i, std::size_t j) { return table.data() + (i * (len + 1) + j) * nts; };

  for (std::size_t span = 1; span <= len; ++span) {
    for (std::size_t i = 0; i + span <= len; ++i) {
      const std::size_t j = i + span;
      char* here = cell(i, j);
      if (span == 1) {
        for (const auto& p : g.productions()) {
          if (p.rhs.size() == 1 && p.rhs[0].is_terminal() && p.rhs[0].id == word[i]) here[p.lhs] = 1;
        }
      }
      for (std::size_t k = i + 1; k < j; ++k) {
        const char* left = cell(i, k);
        const char* right = cell(k, j);
        for (const Production* p : binary) {
          if (left[p->rhs[0].id] && right[p->rhs[1].id]) here[p->lhs] = 1;
        }
      }
      for (bool changed = true; changed;) {
        changed = false;
        for (const Production* p : binary) {
          if (here[p->lhs]) continue;
          const auto b = p->rhs[0].id;
          const auto c = p->rhs[1].id;
          if ((nullable[b] && here[c]) || (nullable[c] && here[b])) here[p->lhs] = changed = true;
        }
      }
    }
  }
  return cell(0, len)[g.start()] != 0;
}

}  // namespace

bool recognize(const Grammar& g, std::span<const Terminal> word) {
  if (is_cnf(g)) return cyk(g, word);
  return cyk(to_cnf(g), word);
}

}  // namespace cflr
