#include "cflr/lin_dist_index.hpp"

#include <chrono>

#include "cflr/error.hpp"
#include "lin_rules.hpp"

namespace cflr {

DistanceTable::DistanceTable(Grammar grammar, std::size_t vertices)
    : grammar_(std::move(grammar)),
      n_(vertices),
      dist_(grammar_.nonterminal_count() * vertices * vertices, kInfiniteDistance),
      parents_(grammar_.nonterminal_count(), vertices) {}

bool DistanceTable::discover(Nonterminal a, Vertex u, Vertex v, Distance d, WitnessRecord parent) {
  Distance& slot = dist_[(a * n_ + u) * n_ + v];
  if (slot != kInfiniteDistance) return false;
  slot = d;
  parents_.record(a, u, v, parent);
  return true;
}

RelationSet DistanceTable::relations() const {
  RelationSet rel(nonterminal_count(), n_);
  for (Nonterminal a = 0; a < nonterminal_count(); ++a) {
    for (Vertex u = 0; u < n_; ++u) {
      for (Vertex v = 0; v < n_; ++v) {
        if (finite(a, u, v)) rel.insert(a, u, v);
      }
    }
  }
  return rel;
}

DistanceTable lindist_build(const Grammar& g, const LabeledGraph& graph) {
  if (!is_talnf(g)) throw Error(ErrorKind::GrammarNotTalnf, "distance index requires a TALNF grammar");
  const auto started = std::chrono::steady_clock::now();

  const std::size_t n = graph.vertex_count();
  DistanceTable table(g, n);
  const detail::LinRules rules(g, graph.label_count());

  struct Node {
    Nonterminal a;
    Vertex u;
    Vertex v;
    Distance d;
  };
  std::vector<Node> queue;
  std::size_t head = 0;
  auto discover = [&](Nonterminal a, Vertex u, Vertex v, Distance d, WitnessRecord parent) {
    if (table.discover(a, u, v, d, parent)) queue.push_back({a, u, v, d});
  };

  if (g.has_start_epsilon()) {
    for (Vertex u = 0; u < n; ++u) discover(g.start(), u, u, 0, witness::Eps{});
  }
  for (const auto& [a, label] : rules.terminal) {
    for (const Edge& e : graph.edges_with_label(label)) discover(a, e.u, e.v, 1, witness::Term{e.label});
  }

  BuildStats& stats = table.stats;
  while (head < queue.size()) {
    const auto [b, x, v, d] = queue[head++];
    ++stats.dequeues;
    for (const auto& [a, label] : rules.prepend[b]) {
      for (Vertex u : graph.in(label, x)) {
        ++stats.triples_visited;
        discover(a, u, v, d + 1, witness::LinL{label, b, x});
      }
    }
    for (const auto& [a, label] : rules.append[b]) {
      for (Vertex w : graph.out(label, v)) {
        ++stats.triples_visited;
        discover(a, x, w, d + 1, witness::LinR{b, label, v});
      }
    }
  }

  stats.enqueues = queue.size();
  stats.entries = queue.size();
  stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return table;
}

std::optional<Path> shortest_accepted_path(const DistanceTable& d, Vertex s, Vertex t) {
  const std::size_t n = d.vertex_count();
  if (s >= n || t >= n) {
    throw Error(ErrorKind::VertexOutOfRange, "query vertex outside [0, " + std::to_string(n) + ")");
  }
  const Nonterminal start = d.grammar().start();
  if (!d.finite(start, s, t)) return std::nullopt;
  return extract_path(d.parents(), start, s, t);
}

}  // namespace cflr
