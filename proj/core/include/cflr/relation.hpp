#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "cflr/grammar.hpp"
#include "cflr/graph.hpp"

namespace cflr {

/// Square boolean matrix with bit-packed rows.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), words_per_row_((n + 63) / 64), bits_(n * words_per_row_, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_per_row_; }

  bool test(std::size_t row, std::size_t col) const noexcept {
    return (bits_[row * words_per_row_ + col / 64] >> (col % 64)) & 1U;
  }

  /// Sets the bit; returns true if it was previously clear.
  bool set(std::size_t row, std::size_t col) noexcept {
    std::uint64_t& word = bits_[row * words_per_row_ + col / 64];
    const std::uint64_t mask = std::uint64_t{1} << (col % 64);
    if (word & mask) return false;
    word |= mask;
    return true;
  }

  const std::uint64_t* row(std::size_t r) const noexcept { return bits_.data() + r * words_per_row_; }

  /// Visits set columns of `r`, returning the number of words inspected.
  template <typename Fn>
  std::size_t for_each_in_row(std::size_t r, Fn&& fn) const {
    const std::uint64_t* words = row(r);
    for (std::size_t w = 0; w < words_per_row_; ++w) {
      std::uint64_t bits = words[w];
      while (bits) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        fn(w * 64 + bit);
      }
    }
    return words_per_row_;
  }

  std::size_t count() const noexcept;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// One boolean relation M_A per nonterminal over V x V.
class RelationSet {
 public:
  RelationSet() = default;
  RelationSet(std::size_t nonterminals, std::size_t vertices)
      : n_(vertices), matrices_(nonterminals, BitMatrix(vertices)) {}

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t nonterminal_count() const noexcept { return matrices_.size(); }

  const BitMatrix& matrix(Nonterminal a) const { return matrices_.at(a); }

  bool contains(Nonterminal a, Vertex u, Vertex v) const noexcept { return matrices_[a].test(u, v); }

  bool insert(Nonterminal a, Vertex u, Vertex v) noexcept {
    if (!matrices_[a].set(u, v)) return false;
    ++true_count_;
    return true;
  }

  /// Number of set entries across all matrices (T).
  std::size_t true_count() const noexcept { return true_count_; }

  friend bool operator==(const RelationSet& a, const RelationSet& b) { return a.n_ == b.n_ && a.matrices_ == b.matrices_; }

 private:
  std::size_t n_ = 0;
  std::size_t true_count_ = 0;
  std::vector<BitMatrix> matrices_;
};

/// Membership query M_A[s, t]; throws VertexOutOfRange.
bool query(const RelationSet& relations, Nonterminal a, Vertex s, Vertex t);

namespace witness {

/// A -> a via the edge (u, v) of the keyed entry.
struct Term {
  Terminal label;
  friend bool operator==(const Term&, const Term&) = default;
};
/// S -> eps on the diagonal.
struct Eps {
  friend bool operator==(const Eps&, const Eps&) = default;
};
/// A -> B C with split vertex `mid`.
struct Bin {
  Nonterminal left;
  Nonterminal right;
  Vertex mid;
  friend bool operator==(const Bin&, const Bin&) = default;
};
/// A -> a B: edge (u, mid) labeled `label`, then B over (mid, v).
struct LinL {
  Terminal label;
  Nonterminal rest;
  Vertex mid;
  friend bool operator==(const LinL&, const LinL&) = default;
};
/// A -> B a: B over (u, mid), then edge (mid, v) labeled `label`.
struct LinR {
  Nonterminal rest;
  Terminal label;
  Vertex mid;
  friend bool operator==(const LinR&, const LinR&) = default;
};

}  // namespace witness

using WitnessRecord =
    std::variant<std::monostate, witness::Term, witness::Eps, witness::Bin, witness::LinL, witness::LinR>;

/// W[A, u, v]: one record per true relation entry. Records are written once
/// and only reference entries inserted before them, so expansion terminates.
class WitnessTable {
 public:
  WitnessTable() = default;
  WitnessTable(std::size_t nonterminals, std::size_t vertices)
      : nonterminals_(nonterminals), n_(vertices), records_(nonterminals * vertices * vertices) {}

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t nonterminal_count() const noexcept { return nonterminals_; }

  const WitnessRecord& at(Nonterminal a, Vertex u, Vertex v) const noexcept { return records_[index(a, u, v)]; }
  bool defined(Nonterminal a, Vertex u, Vertex v) const noexcept {
    return !std::holds_alternative<std::monostate>(at(a, u, v));
  }

  /// First writer wins; returns false when the entry already had a record.
  bool record(Nonterminal a, Vertex u, Vertex v, WitnessRecord rec) noexcept {
    auto& slot = records_[index(a, u, v)];
    if (!std::holds_alternative<std::monostate>(slot)) return false;
    slot = rec;
    return true;
  }

  friend bool operator==(const WitnessTable&, const WitnessTable&) = default;

 private:
  std::size_t index(Nonterminal a, Vertex u, Vertex v) const noexcept { return (a * n_ + u) * n_ + v; }

  std::size_t nonterminals_ = 0;
  std::size_t n_ = 0;
  std::vector<WitnessRecord> records_;
};

/// Reconstructs the explicit path for W[A, u, v] in time linear in its
/// length. Throws NoWitness when the entry is undefined.
Path extract_path(const WitnessTable& w, Nonterminal a, Vertex u, Vertex v);

/// Operation counts gathered during a build.
struct BuildStats {
  std::size_t entries = 0;      // T
  std::size_t dequeues = 0;
  std::size_t enqueues = 0;
  std::size_t words_scanned = 0;    // bit-row words inspected (saturation only)
  std::size_t triples_visited = 0;  // set bits or adjacency entries visited
  double seconds = 0.0;

  /// Total inner-loop iterations: scanned words plus visited candidates.
  std::size_t propagation_count() const noexcept { return words_scanned + triples_visited; }
};

/// Output of the saturation-style builders.
struct ReachabilityIndex {
  Grammar grammar;
  RelationSet relations;
  WitnessTable witnesses;
  BuildStats stats;

  bool query(Vertex s, Vertex t) const { return cflr::query(relations, grammar.start(), s, t); }
};

}  // namespace cflr
