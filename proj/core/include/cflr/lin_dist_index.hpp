#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "cflr/grammar.hpp"
#include "cflr/graph.hpp"
#include "cflr/relation.hpp"

namespace cflr {

using Distance = std::uint32_t;
inline constexpr Distance kInfiniteDistance = std::numeric_limits<Distance>::max();

/// Shortest accepted path lengths D_A[u, v] for a TALNF grammar, with one
/// parent record per finite entry. Parent records reuse the witness shapes:
/// Term and Eps are sources, LinL and LinR name the contributing edge and the
/// predecessor triple.
class DistanceTable {
 public:
  DistanceTable(Grammar grammar, std::size_t vertices);

  const Grammar& grammar() const noexcept { return grammar_; }
  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t nonterminal_count() const noexcept { return grammar_.nonterminal_count(); }

  Distance distance(Nonterminal a, Vertex u, Vertex v) const noexcept { return dist_[(a * n_ + u) * n_ + v]; }
  bool finite(Nonterminal a, Vertex u, Vertex v) const noexcept { return distance(a, u, v) != kInfiniteDistance; }
  const WitnessTable& parents() const noexcept { return parents_; }

  /// Sets the distance and parent of an undiscovered entry; returns false if
  /// the entry was already discovered.
  bool discover(Nonterminal a, Vertex u, Vertex v, Distance d, WitnessRecord parent);

  /// Boolean view: finite entries as relations.
  RelationSet relations() const;

  BuildStats stats;

 private:
  Grammar grammar_;
  std::size_t n_ = 0;
  std::vector<Distance> dist_;
  WitnessTable parents_;
};

/// Multi-source BFS over the implicit dependency graph of (A, u, v) triples.
/// Epsilon sources (distance 0) are queued before terminal sources
/// (distance 1); every dependency edge has unit weight. stats.dequeues counts
/// settled triples. Throws GrammarNotTalnf.
DistanceTable lindist_build(const Grammar& g, const LabeledGraph& graph);

/// A shortest s -> t path accepted from the start symbol, or nullopt when
/// D_S[s, t] is infinite. Throws VertexOutOfRange.
std::optional<Path> shortest_accepted_path(const DistanceTable& d, Vertex s, Vertex t);

}  // namespace cflr
