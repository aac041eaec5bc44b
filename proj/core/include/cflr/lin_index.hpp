#pragma once

#include "cflr/grammar.hpp"
#include "cflr/graph.hpp"
#include "cflr/relation.hpp"

namespace cflr {

/// Terminal-anchored propagation for TALNF grammars in O(|P| m n).
///
/// Dequeuing (B, x, v) scans In_a(x) for each A -> aB and Out_a(v) for each
/// A -> Ba. stats.triples_visited counts the adjacency entries scanned;
/// initialization is not counted.
///
/// Throws GrammarNotTalnf when `g` fails the TALNF checker.
ReachabilityIndex lin_build(const Grammar& g, const LabeledGraph& graph);

/// Inner-loop iterations of a finished build.
inline std::size_t propagation_count(const BuildStats& stats) noexcept { return stats.propagation_count(); }

}  // namespace cflr
