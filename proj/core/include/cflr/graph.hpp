#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "cflr/grammar.hpp"

namespace cflr {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Terminal label = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Largest vertex count accepted without an explicit `@vertices` header.
inline constexpr std::size_t kMaxImplicitVertices = std::size_t{1} << 24;

/// Edge-labeled directed graph with per-label adjacency (In_a, Out_a) in CSR
/// form. Identical (u, v, label) triples are stored once.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  LabeledGraph(std::size_t vertex_count, std::size_t label_count, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t label_count() const noexcept { return labels_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t edge_count(Terminal label) const { return by_label_offsets_.at(label + 1) - by_label_offsets_.at(label); }

  /// Edges sorted by (u, v, label).
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Edges carrying `label`, sorted by (u, v).
  std::span<const Edge> edges_with_label(Terminal label) const;

  /// Predecessors u with (u, v) labeled `label`.
  std::span<const Vertex> in(Terminal label, Vertex v) const;
  /// Successors v with (u, v) labeled `label`.
  std::span<const Vertex> out(Terminal label, Vertex u) const;

  bool has_edge(Vertex u, Vertex v, Terminal label) const;

  friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    return a.n_ == b.n_ && a.labels_ == b.labels_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t labels_ = 0;
  std::vector<Edge> edges_;
  std::vector<Edge> by_label_;
  std::vector<std::size_t> by_label_offsets_{0};
  // CSR indexed by label * n + vertex.
  std::vector<std::size_t> in_offsets_{0};
  std::vector<Vertex> in_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<Vertex> out_;
};

/// Parses `u v label` lines with an optional `@vertices N` header. Labels are
/// resolved against `labels` (the grammar's terminals).
LabeledGraph parse_graph(std::string_view text, const SymbolTable& labels);

/// Canonical text form: `@vertices N` followed by edges in sorted order.
std::string serialize_graph(const LabeledGraph& g, const SymbolTable& labels);

/// A walk: a start vertex followed by edges whose endpoints chain.
struct Path {
  Vertex start = 0;
  std::vector<Edge> edges;

  Vertex finish() const noexcept { return edges.empty() ? start : edges.back().v; }
  std::size_t length() const noexcept { return edges.size(); }

  friend bool operator==(const Path&, const Path&) = default;
};

std::vector<Terminal> trace_of(const Path& p);

/// True when the edges chain from `start` and every edge exists in `g`.
bool is_walk_in(const Path& p, const LabeledGraph& g);

/// One `u v label` line per edge.
std::string format_path(const Path& p, const SymbolTable& labels);

}  // namespace cflr
