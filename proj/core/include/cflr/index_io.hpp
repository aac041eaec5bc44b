#pragma once

#include <iosfwd>
#include <string_view>
#include <variant>

#include "cflr/lin_dist_index.hpp"
#include "cflr/relation.hpp"

namespace cflr {

enum class IndexKind { Sat, Lin, LinDist };

std::string_view to_string(IndexKind kind) noexcept;

/// An index read back from disk.
struct StoredIndex {
  IndexKind kind;
  std::variant<ReachabilityIndex, DistanceTable> data;

  const Grammar& grammar() const;
  std::size_t vertex_count() const;
  /// Relations of all nonterminals (finite distances for lindist).
  RelationSet relations() const;
  /// Witness records (parent pointers for lindist).
  const WitnessTable& witnesses() const;
  /// M_S[s, t]; throws VertexOutOfRange.
  bool query(Vertex s, Vertex t) const;
};

/// Versioned text format:
///
///   cflr-index 1
///   kind sat|lin|lindist
///   vertices N
///   grammar L            followed by L lines of grammar text
///   entries T            followed by T lines `A u v [dist] record`
///   end
///
/// Records are `term a`, `eps`, `bin B C m`, `linl a B x`, `linr B a x`
/// with numeric symbol ids. Entries are sorted by (A, u, v).
void write_index(std::ostream& out, IndexKind kind, const ReachabilityIndex& index);
void write_index(std::ostream& out, const DistanceTable& table);

/// Throws IndexFormat on malformed input.
StoredIndex read_index(std::istream& in);

}  // namespace cflr
