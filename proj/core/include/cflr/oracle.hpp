#pragma once

#include <cstddef>
#include <vector>

#include "cflr/grammar.hpp"
#include "cflr/graph.hpp"
#include "cflr/relation.hpp"

namespace cflr::oracle {

/// Least fixpoint of the grammar's inference rules computed by full rounds
/// (every rule re-applied to the previous round's relations) until nothing
/// changes. Accepts any grammar whose rules have at most two right-hand side
/// symbols, which covers CNF and TALNF; throws UnsupportedForm otherwise.
RelationSet naive_fixpoint(const Grammar& g, const LabeledGraph& graph);

struct AcceptedWalk {
  std::size_t length;
  Path path;
  friend bool operator==(const AcceptedWalk&, const AcceptedWalk&) = default;
};

inline constexpr std::size_t kMaxEnumerationLength = 12;
inline constexpr std::size_t kDefaultExpansionBudget = 4'000'000;

/// Every walk s -> t with at most `max_len` edges whose trace is in L(g),
/// sorted by length then edges. Throws std::invalid_argument when
/// max_len > kMaxEnumerationLength and BudgetExceeded when more than
/// `budget` walk prefixes would be expanded.
std::vector<AcceptedWalk> enumerate_accepted(const Grammar& g, const LabeledGraph& graph, Vertex s, Vertex t,
                                             std::size_t max_len,
                                             std::size_t budget = kDefaultExpansionBudget);

}  // namespace cflr::oracle
