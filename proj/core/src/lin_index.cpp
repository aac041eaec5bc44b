#include "cflr/lin_index.hpp"

#include <chrono>

#include "cflr/error.hpp"
#include "lin_rules.hpp"

namespace cflr {

ReachabilityIndex lin_build(const Grammar& g, const LabeledGraph& graph) {
  if (!is_talnf(g)) throw Error(ErrorKind::GrammarNotTalnf, "linear index requires a TALNF grammar");
  const auto started = std::chrono::steady_clock::now();

  const std::size_t n = graph.vertex_count();
  const std::size_t nts = g.nonterminal_count();
  ReachabilityIndex idx{g, RelationSet(nts, n), WitnessTable(nts, n), {}};
  const detail::LinRules rules(g, graph.label_count());

  struct Triple {
    Nonterminal a;
    Vertex u;
    Vertex v;
  };
  std::vector<Triple> queue;
  std::size_t head = 0;
  auto insert = [&](Nonterminal a, Vertex u, Vertex v, WitnessRecord rec) {
    if (!idx.relations.insert(a, u, v)) return;
    idx.witnesses.record(a, u, v, rec);
    queue.push_back({a, u, v});
  };

  for (const auto& [a, label] : rules.terminal) {
    for (const Edge& e : graph.edges_with_label(label)) insert(a, e.u, e.v, witness::Term{e.label});
  }
  if (g.has_start_epsilon()) {
    for (Vertex u = 0; u < n; ++u) insert(g.start(), u, u, witness::Eps{});
  }

  BuildStats& stats = idx.stats;
  while (head < queue.size()) {
    const auto [b, x, v] = queue[head++];
    ++stats.dequeues;
    for (const auto& [a, label] : rules.prepend[b]) {  // A -> a B
      for (Vertex u : graph.in(label, x)) {
        ++stats.triples_visited;
        if (!idx.relations.contains(a, u, v)) insert(a, u, v, witness::LinL{label, b, x});
      }
    }
    for (const auto& [a, label] : rules.append[b]) {  // A -> B a
      for (Vertex w : graph.out(label, v)) {
        ++stats.triples_visited;
        if (!idx.relations.contains(a, x, w)) insert(a, x, w, witness::LinR{b, label, v});
      }
    }
  }

  stats.enqueues = queue.size();
  stats.entries = idx.relations.true_count();
  stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return idx;
}

}  // namespace cflr
