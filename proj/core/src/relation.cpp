#include "cflr/relation.hpp"

#include <string>

#include "cflr/error.hpp"
#include "overloaded.hpp"

namespace cflr {

std::size_t BitMatrix::count() const noexcept {
  std::size_t total = 0;
  for (std::uint64_t w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool query(const RelationSet& relations, Nonterminal a, Vertex s, Vertex t) {
  const std::size_t n = relations.vertex_count();
  if (s >= n || t >= n) {
    throw Error(ErrorKind::VertexOutOfRange, "query vertex outside [0, " + std::to_string(n) + ")");
  }
  if (a >= relations.nonterminal_count()) {
    throw Error(ErrorKind::UndeclaredSymbol, "nonterminal id out of range");
  }
  return relations.contains(a, s, t);
}

namespace {

struct Task {
  bool emit;  // true: output `edge`; false: expand (a, u, v)
  Edge edge;
  Nonterminal a;
};

}  // namespace

Path extract_path(const WitnessTable& w, Nonterminal a, Vertex u, Vertex v) {
  const std::size_t n = w.vertex_count();
  if (u >= n || v >= n) throw Error(ErrorKind::VertexOutOfRange, "witness vertex out of range");
  if (a >= w.nonterminal_count() || !w.defined(a, u, v)) {
    throw Error(ErrorKind::NoWitness, "no witness for (" + std::to_string(a) + ", " + std::to_string(u) +
                                          ", " + std::to_string(v) + ")");
  }

  Path path{u, {}};
  // Expand tasks reuse `edge.u`/`edge.v` as the entry's endpoints.
  std::vector<Task> stack{{false, {u, v, 0}, a}};
  while (!stack.empty()) {
    const Task task = stack.back();
    stack.pop_back();
    if (task.emit) {
      path.edges.push_back(task.edge);
      continue;
    }
    const Vertex x = task.edge.u;
    const Vertex y = task.edge.v;
    const WitnessRecord& rec = w.at(task.a, x, y);
    std::visit(detail::Overloaded{
                   [&](std::monostate) {
                     throw Error(ErrorKind::NoWitness, "witness table references an undefined entry");
                   },
                   [&](const witness::Term& t) { path.edges.push_back({x, y, t.label}); },
                   [&](const witness::Eps&) {},
                   [&](const witness::Bin& b) {
                     stack.push_back({false, {b.mid, y, 0}, b.right});
                     stack.push_back({false, {x, b.mid, 0}, b.left});
                   },
                   [&](const witness::LinL& l) {
                     stack.push_back({false, {l.mid, y, 0}, l.rest});
                     stack.push_back({true, {x, l.mid, l.label}, 0});
                   },
                   [&](const witness::LinR& r) {
                     stack.push_back({true, {r.mid, y, r.label}, 0});
                     stack.push_back({false, {x, r.mid, 0}, r.rest});
                   },
               },
               rec);
  }
  return path;
}

}  // namespace cflr
