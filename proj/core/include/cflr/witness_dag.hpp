#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cflr/graph.hpp"
#include "cflr/relation.hpp"

namespace cflr {

using NodeHandle = std::uint32_t;

namespace dag {

struct EdgeNode {
  Vertex u;
  Vertex v;
  Terminal label;
  friend bool operator==(const EdgeNode&, const EdgeNode&) = default;
};
struct EpsNode {
  Vertex u;
  friend bool operator==(const EpsNode&, const EpsNode&) = default;
};
struct ConcatNode {
  NodeHandle left;
  NodeHandle right;
  friend bool operator==(const ConcatNode&, const ConcatNode&) = default;
};

}  // namespace dag

using DagNode = std::variant<dag::EdgeNode, dag::EpsNode, dag::ConcatNode>;

/// Hash-consed arena of witness nodes plus one root per true relation entry.
/// Handles are indices into an append-only arena, so children always have
/// smaller handles than their parents.
class WitnessDag {
 public:
  WitnessDag() = default;
  WitnessDag(std::size_t nonterminals, std::size_t vertices) : nonterminals_(nonterminals), n_(vertices) {}

  NodeHandle make_edge(Vertex u, Vertex v, Terminal label);
  NodeHandle make_eps(Vertex u);
  /// Throws InvalidHandle on unknown children or when target(left) != source(right).
  NodeHandle make_concat(NodeHandle left, NodeHandle right);

  const DagNode& node(NodeHandle h) const;
  Vertex source(NodeHandle h) const;
  Vertex target(NodeHandle h) const;
  /// Explicit path length denoted by `h`, saturating at UINT64_MAX.
  std::uint64_t path_length(NodeHandle h) const;

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t constructor_calls() const noexcept { return constructor_calls_; }

  void set_root(Nonterminal a, Vertex u, Vertex v, NodeHandle h);
  std::optional<NodeHandle> root(Nonterminal a, Vertex u, Vertex v) const;
  std::size_t root_count() const noexcept { return roots_.size(); }

 private:
  struct Key {
    std::uint8_t kind;
    std::uint32_t a, b, c;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  NodeHandle intern(const Key& key, DagNode node, Vertex src, Vertex dst, std::uint64_t length);
  std::uint64_t entry_key(Nonterminal a, Vertex u, Vertex v) const noexcept {
    return (static_cast<std::uint64_t>(a) * n_ + u) * n_ + v;
  }

  std::size_t nonterminals_ = 0;
  std::size_t n_ = 0;
  std::size_t constructor_calls_ = 0;
  std::vector<DagNode> nodes_;
  std::vector<Vertex> source_;
  std::vector<Vertex> target_;
  std::vector<std::uint64_t> length_;
  std::unordered_map<Key, NodeHandle, KeyHash> cons_;
  std::unordered_map<std::uint64_t, NodeHandle> roots_;
};

/// Converts every witness record into DAG nodes and assigns roots. Throws
/// MissingWitness when a true entry has no record, a record references a
/// false entry, or records form a cycle.
WitnessDag swd_wrap(const RelationSet& relations, const WitnessTable& witnesses);

/// Explicit path for a DAG node, linear in the output length.
Path expand_explicit(const WitnessDag& dag, NodeHandle root);

/// Straight-line program: rule i is `X_{i+1} -> a | eps | X_j X_k` with
/// j, k <= i. The start symbol is the last rule.
struct Slp {
  struct Pair {
    std::size_t left;
    std::size_t right;
    friend bool operator==(const Pair&, const Pair&) = default;
  };
  struct Empty {
    friend bool operator==(const Empty&, const Empty&) = default;
  };
  using Rule = std::variant<Terminal, Empty, Pair>;  // child indices are 0-based

  std::vector<Rule> rules;

  std::size_t start() const noexcept { return rules.size() - 1; }
  friend bool operator==(const Slp&, const Slp&) = default;
};

/// One rule per node reachable from `root`, in topological order.
Slp emit_slp(const WitnessDag& dag, NodeHandle root);

/// Expands the start symbol. Throws BudgetExceeded if the output would
/// exceed `max_length` symbols.
std::vector<Terminal> expand_slp(const Slp& slp, std::size_t max_length = std::size_t{1} << 24);

/// `Xi -> a`, `Xi -> eps`, `Xi -> Xj Xk`, one per line, start last.
std::string format_slp(const Slp& slp, const SymbolTable& labels);

}  // namespace cflr
