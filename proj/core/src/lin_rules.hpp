#pragma once

#include <utility>
#include <vector>

#include "cflr/grammar.hpp"

namespace cflr::detail {

/// TALNF rules indexed by the nonterminal on their right-hand side, so a
/// dequeue of (B, x, v) touches only rules that mention B. Terminal rules
/// whose label the graph never uses are dropped.
struct LinRules {
  using Entry = std::pair<Nonterminal, Terminal>;  // (lhs A, terminal a)

  std::vector<Entry> terminal;               // A -> a
  std::vector<std::vector<Entry>> prepend;   // [B] -> A -> a B
  std::vector<std::vector<Entry>> append;    // [B] -> A -> B a

  LinRules(const Grammar& g, std::size_t label_count)
      : prepend(g.nonterminal_count()), append(g.nonterminal_count()) {
    for (const auto& p : g.productions()) {
      const auto& r = p.rhs;
      if (r.size() == 1) {
        if (r[0].id < label_count) terminal.emplace_back(p.lhs, r[0].id);
      } else if (r.size() == 2 && r[0].is_terminal()) {
        if (r[0].id < label_count) prepend[r[1].id].emplace_back(p.lhs, r[0].id);
      } else if (r.size() == 2) {
        if (r[1].id < label_count) append[r[0].id].emplace_back(p.lhs, r[1].id);
      }
    }
  }
};

}  // namespace cflr::detail
