#include "cflr/sat_index.hpp"

#include <chrono>

#include "cflr/error.hpp"

namespace cflr {
namespace {

struct Triple {
  Nonterminal a;
  Vertex u;
  Vertex v;
};

// For a dequeued X, every binary rule A -> B C in which X occurs. `left`
// means X = B (scan row j of M_C); otherwise X = C (scan column i of M_B).
struct Role {
  Nonterminal lhs;
  Nonterminal other;
  bool left;
};

}  // namespace

ReachabilityIndex sat_build(const Grammar& g, const LabeledGraph& graph) {
  if (!is_cnf(g)) throw Error(ErrorKind::GrammarNotCnf, "saturation index requires a CNF grammar");
  const auto started = std::chrono::steady_clock::now();

  const std::size_t n = graph.vertex_count();
  const std::size_t nts = g.nonterminal_count();
  ReachabilityIndex idx{g, RelationSet(nts, n), WitnessTable(nts, n), {}};
  std::vector<BitMatrix> columns(nts, BitMatrix(n));
  std::vector<Triple> queue;
  std::size_t head = 0;

  auto insert = [&](Nonterminal a, Vertex u, Vertex v, WitnessRecord rec) {
    if (!idx.relations.insert(a, u, v)) return;
    columns[a].set(v, u);
    idx.witnesses.record(a, u, v, rec);
    queue.push_back({a, u, v});
  };

  std::vector<std::vector<Role>> roles(nts);
  for (const auto& p : g.productions()) {
    if (p.rhs.size() == 1) {
      for (const Edge& e : graph.edges_with_label(p.rhs[0].id)) insert(p.lhs, e.u, e.v, witness::Term{e.label});
    } else if (p.rhs.size() == 2) {
      roles[p.rhs[0].id].push_back({p.lhs, p.rhs[1].id, true});
      roles[p.rhs[1].id].push_back({p.lhs, p.rhs[0].id, false});
    }
  }
  if (g.has_start_epsilon()) {
    for (Vertex u = 0; u < n; ++u) insert(g.start(), u, u, witness::Eps{});
  }

  BuildStats& stats = idx.stats;
  while (head < queue.size()) {
    const Triple t = queue[head++];
    ++stats.dequeues;
    for (const Role& r : roles[t.a]) {
      if (r.left) {
        stats.words_scanned += idx.relations.matrix(r.other).for_each_in_row(t.v, [&](std::size_t k) {
          ++stats.triples_visited;
          const auto kv = static_cast<Vertex>(k);
          if (!idx.relations.contains(r.lhs, t.u, kv)) insert(r.lhs, t.u, kv, witness::Bin{t.a, r.other, t.v});
        });
      } else {
        stats.words_scanned += columns[r.other].for_each_in_row(t.u, [&](std::size_t h) {
          ++stats.triples_visited;
          const auto hv = static_cast<Vertex>(h);
          if (!idx.relations.contains(r.lhs, hv, t.v)) insert(r.lhs, hv, t.v, witness::Bin{r.other, t.a, t.u});
        });
      }
    }
  }

  stats.enqueues = queue.size();
  stats.entries = idx.relations.true_count();
  stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return idx;
}

}  // namespace cflr
