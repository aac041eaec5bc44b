#include "cflr/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "cflr/error.hpp"

namespace cflr::oracle {

RelationSet naive_fixpoint(const Grammar& g, const LabeledGraph& graph) {
  for (const auto& p : g.productions()) {
    if (p.rhs.size() > 2) {
      throw Error(ErrorKind::UnsupportedForm, "oracle supports rules with at most two right-hand side symbols");
    }
  }
  const std::size_t n = graph.vertex_count();
  const std::size_t nts = g.nonterminal_count();
  using Matrix = std::vector<char>;  // row-major n x n

  std::vector<Matrix> terminal(g.terminal_count(), Matrix(n * n, 0));
  for (const Edge& e : graph.edges()) {
    if (e.label < terminal.size()) terminal[e.label][e.u * n + e.v] = 1;
  }

  std::vector<Matrix> current(nts, Matrix(n * n, 0));
  auto relation_of = [&](const std::vector<Matrix>& rel, Symbol s) -> const Matrix& {
    return s.is_terminal() ? terminal[s.id] : rel[s.id];
  };

  for (;;) {
    std::vector<Matrix> next = current;
    for (const auto& p : g.productions()) {
      Matrix& out = next[p.lhs];
      if (p.rhs.empty()) {
        for (std::size_t u = 0; u < n; ++u) out[u * n + u] = 1;
      } else if (p.rhs.size() == 1) {
        const Matrix& r = relation_of(current, p.rhs[0]);
        for (std::size_t i = 0; i < n * n; ++i) out[i] |= r[i];
      } else {
        const Matrix& left = relation_of(current, p.rhs[0]);
        const Matrix& right = relation_of(current, p.rhs[1]);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t k = 0; k < n; ++k) {
            if (!left[i * n + k]) continue;
            for (std::size_t j = 0; j < n; ++j) {
              if (right[k * n + j]) out[i * n + j] = 1;
            }
          }
        }
      }
    }
    if (next == current) break;
    current = std::move(next);
  }

  RelationSet result(nts, n);
  for (Nonterminal a = 0; a < nts; ++a) {
    for (std::size_t i = 0; i < n * n; ++i) {
      if (current[a][i]) result.insert(a, static_cast<Vertex>(i / n), static_cast<Vertex>(i % n));
    }
  }
  return result;
}

std::vector<AcceptedWalk> enumerate_accepted(const Grammar& g, const LabeledGraph& graph, Vertex s, Vertex t,
                                             std::size_t max_len, std::size_t budget) {
  if (max_len > kMaxEnumerationLength) {
    throw std::invalid_argument("enumeration bound must not exceed " + std::to_string(kMaxEnumerationLength));
  }
  const std::size_t n = graph.vertex_count();
  if (s >= n || t >= n) throw Error(ErrorKind::VertexOutOfRange, "enumeration endpoint out of range");

  const Grammar cnf = to_cnf(g);
  std::map<std::vector<Terminal>, bool> verdicts;
  auto accepted = [&](const std::vector<Terminal>& word) {
    auto [it, fresh] = verdicts.try_emplace(word, false);
    if (fresh) it->second = recognize(cnf, word);
    return it->second;
  };

  std::vector<AcceptedWalk> found;
  std::size_t expansions = 0;
  Path walk{s, {}};
  std::vector<Terminal> trace;

  // Depth-first over all walks from s; recursion depth is at most max_len.
  auto visit = [&](auto&& self, Vertex at) -> void {
    if (++expansions > budget) throw Error(ErrorKind::BudgetExceeded, "walk enumeration budget exhausted");
    if (at == t && accepted(trace)) found.push_back({walk.edges.size(), walk});
    if (walk.edges.size() == max_len) return;
    auto it = std::lower_bound(graph.edges().begin(), graph.edges().end(), Edge{at, 0, 0});
    for (; it != graph.edges().end() && it->u == at; ++it) {
      walk.edges.push_back(*it);
      trace.push_back(it->label);
      self(self, it->v);
      trace.pop_back();
      walk.edges.pop_back();
    }
  };
  visit(visit, s);

  std::sort(found.begin(), found.end(), [](const AcceptedWalk& a, const AcceptedWalk& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.path.edges < b.path.edges;
  });
  return found;
}

}  // namespace cflr::oracle
