#pragma once

#include "cflr/grammar.hpp"
#include "cflr/graph.hpp"
#include "cflr/relation.hpp"

namespace cflr {

/// Worklist saturation over a CNF grammar. Computes every relation M_A and a
/// first-writer witness per true entry in O(|P| n^3).
///
/// Row scans "k with M_C[j,k] = 1" walk the set bits of row j; column scans
/// use a transposed copy of each matrix. stats.words_scanned counts the
/// 64-bit words inspected by those scans, stats.triples_visited the set bits.
///
/// Throws GrammarNotCnf when `g` fails the CNF checker.
ReachabilityIndex sat_build(const Grammar& g, const LabeledGraph& graph);

}  // namespace cflr
