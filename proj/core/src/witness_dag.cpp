#include "cflr/witness_dag.hpp"

#include <sstream>
#include <unordered_set>

#include "cflr/error.hpp"
#include "overloaded.hpp"

namespace cflr {

namespace {

constexpr std::uint8_t kEdgeKind = 0;
constexpr std::uint8_t kEpsKind = 1;
constexpr std::uint8_t kConcatKind = 2;

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

}  // namespace

std::size_t WitnessDag::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL * (k.kind + 1);
  for (std::uint64_t x : {std::uint64_t{k.a}, std::uint64_t{k.b}, std::uint64_t{k.c}}) {
    h ^= x + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

NodeHandle WitnessDag::intern(const Key& key, DagNode node, Vertex src, Vertex dst, std::uint64_t length) {
  ++constructor_calls_;
  if (auto it = cons_.find(key); it != cons_.end()) return it->second;
  const auto h = static_cast<NodeHandle>(nodes_.size());
  nodes_.push_back(node);
  source_.push_back(src);
  target_.push_back(dst);
  length_.push_back(length);
  cons_.emplace(key, h);
  return h;
}

NodeHandle WitnessDag::make_edge(Vertex u, Vertex v, Terminal label) {
  return intern({kEdgeKind, u, v, label}, dag::EdgeNode{u, v, label}, u, v, 1);
}

NodeHandle WitnessDag::make_eps(Vertex u) { return intern({kEpsKind, u, 0, 0}, dag::EpsNode{u}, u, u, 0); }

NodeHandle WitnessDag::make_concat(NodeHandle left, NodeHandle right) {
  if (left >= nodes_.size() || right >= nodes_.size()) {
    throw Error(ErrorKind::InvalidHandle, "concat child is not a node of this DAG");
  }
  if (target_[left] != source_[right]) {
    throw Error(ErrorKind::InvalidHandle, "concat children do not share an endpoint");
  }
  return intern({kConcatKind, left, right, 0}, dag::ConcatNode{left, right}, source_[left], target_[right],
                saturating_add(length_[left], length_[right]));
}

const DagNode& WitnessDag::node(NodeHandle h) const {
  if (h >= nodes_.size()) throw Error(ErrorKind::InvalidHandle, "invalid DAG handle " + std::to_string(h));
  return nodes_[h];
}

Vertex WitnessDag::source(NodeHandle h) const {
  node(h);
  return source_[h];
}

Vertex WitnessDag::target(NodeHandle h) const {
  node(h);
  return target_[h];
}

std::uint64_t WitnessDag::path_length(NodeHandle h) const {
  node(h);
  return length_[h];
}

void WitnessDag::set_root(Nonterminal a, Vertex u, Vertex v, NodeHandle h) {
  node(h);
  roots_[entry_key(a, u, v)] = h;
}

std::optional<NodeHandle> WitnessDag::root(Nonterminal a, Vertex u, Vertex v) const {
  if (a >= nonterminals_ || u >= n_ || v >= n_) return std::nullopt;
  if (auto it = roots_.find(entry_key(a, u, v)); it != roots_.end()) return it->second;
  return std::nullopt;
}

WitnessDag swd_wrap(const RelationSet& relations, const WitnessTable& witnesses) {
  const std::size_t n = relations.vertex_count();
  const std::size_t nts = relations.nonterminal_count();
  if (witnesses.vertex_count() != n || witnesses.nonterminal_count() != nts) {
    throw Error(ErrorKind::MissingWitness, "witness table shape does not match the relations");
  }
  WitnessDag dag(nts, n);

  struct Entry {
    Nonterminal a;
    Vertex u;
    Vertex v;
  };
  auto key = [n](const Entry& e) { return (static_cast<std::uint64_t>(e.a) * n + e.u) * n + e.v; };
  std::unordered_set<std::uint64_t> in_progress;

  auto children = [&](const Entry& e) {
    std::vector<Entry> out;
    std::visit(detail::Overloaded{
                   [&](std::monostate) {
                     throw Error(ErrorKind::MissingWitness, "true entry has no witness record");
                   },
                   [](const witness::Term&) {},
                   [](const witness::Eps&) {},
                   [&](const witness::Bin& b) {
                     out.push_back({b.left, e.u, b.mid});
                     out.push_back({b.right, b.mid, e.v});
                   },
                   [&](const witness::LinL& l) { out.push_back({l.rest, l.mid, e.v}); },
                   [&](const witness::LinR& r) { out.push_back({r.rest, e.u, r.mid}); },
               },
               witnesses.at(e.a, e.u, e.v));
    for (const Entry& c : out) {
      if (c.a >= nts || c.u >= n || c.v >= n || !relations.contains(c.a, c.u, c.v)) {
        throw Error(ErrorKind::MissingWitness, "witness record references a false entry");
      }
    }
    return out;
  };

  auto build_node = [&](const Entry& e) -> NodeHandle {
    auto child_root = [&](Nonterminal a, Vertex u, Vertex v) { return *dag.root(a, u, v); };
    return std::visit(
        detail::Overloaded{
            [&](std::monostate) -> NodeHandle { throw Error(ErrorKind::MissingWitness, "missing record"); },
            [&](const witness::Term& t) { return dag.make_edge(e.u, e.v, t.label); },
            [&](const witness::Eps&) { return dag.make_eps(e.u); },
            [&](const witness::Bin& b) {
              return dag.make_concat(child_root(b.left, e.u, b.mid), child_root(b.right, b.mid, e.v));
            },
            [&](const witness::LinL& l) {
              const NodeHandle edge = dag.make_edge(e.u, l.mid, l.label);
              return dag.make_concat(edge, child_root(l.rest, l.mid, e.v));
            },
            [&](const witness::LinR& r) {
              const NodeHandle prefix = child_root(r.rest, e.u, r.mid);
              return dag.make_concat(prefix, dag.make_edge(r.mid, e.v, r.label));
            },
        },
        witnesses.at(e.a, e.u, e.v));
  };

  std::vector<Entry> stack;
  for (Nonterminal a = 0; a < nts; ++a) {
    for (Vertex u = 0; u < n; ++u) {
      relations.matrix(a).for_each_in_row(u, [&](std::size_t col) {
        const Entry top_entry{a, u, static_cast<Vertex>(col)};
        if (dag.root(a, u, top_entry.v)) return;
        stack.assign(1, top_entry);
        while (!stack.empty()) {
          const Entry e = stack.back();
          if (dag.root(e.a, e.u, e.v)) {
            stack.pop_back();
            continue;
          }
          bool ready = true;
          for (const Entry& c : children(e)) {
            if (dag.root(c.a, c.u, c.v)) continue;
            if (in_progress.contains(key(c))) {
              throw Error(ErrorKind::MissingWitness, "witness records form a cycle");
            }
            ready = false;
            stack.push_back(c);
          }
          if (ready) {
            dag.set_root(e.a, e.u, e.v, build_node(e));
            in_progress.erase(key(e));
            stack.pop_back();
          } else {
            in_progress.insert(key(e));
          }
        }
      });
    }
  }
  return dag;
}

Path expand_explicit(const WitnessDag& dag, NodeHandle root) {
  Path path{dag.source(root), {}};
  std::vector<NodeHandle> stack{root};
  while (!stack.empty()) {
    const NodeHandle h = stack.back();
    stack.pop_back();
    std::visit(detail::Overloaded{
                   [&](const dag::EdgeNode& e) { path.edges.push_back({e.u, e.v, e.label}); },
                   [](const dag::EpsNode&) {},
                   [&](const dag::ConcatNode& c) {
                     stack.push_back(c.right);
                     stack.push_back(c.left);
                   },
               },
               dag.node(h));
  }
  return path;
}

Slp emit_slp(const WitnessDag& dag, NodeHandle root) {
  dag.node(root);
  Slp slp;
  std::unordered_map<NodeHandle, std::size_t> rule_of;
  // Post-order DFS: a node is emitted after both of its children.
  std::vector<std::pair<NodeHandle, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [h, expanded] = stack.back();
    stack.pop_back();
    if (rule_of.contains(h)) continue;
    const DagNode& node = dag.node(h);
    if (const auto* c = std::get_if<dag::ConcatNode>(&node); c && !expanded) {
      stack.push_back({h, true});
      stack.push_back({c->right, false});
      stack.push_back({c->left, false});
      continue;
    }
    rule_of[h] = slp.rules.size();
    slp.rules.push_back(std::visit(detail::Overloaded{
                                       [](const dag::EdgeNode& e) -> Slp::Rule { return e.label; },
                                       [](const dag::EpsNode&) -> Slp::Rule { return Slp::Empty{}; },
                                       [&](const dag::ConcatNode& c) -> Slp::Rule {
                                         return Slp::Pair{rule_of.at(c.left), rule_of.at(c.right)};
                                       },
                                   },
                                   node));
  }
  return slp;
}

std::vector<Terminal> expand_slp(const Slp& slp, std::size_t max_length) {
  if (slp.rules.empty()) return {};
  std::vector<std::uint64_t> length(slp.rules.size());
  for (std::size_t i = 0; i < slp.rules.size(); ++i) {
    length[i] = std::visit(detail::Overloaded{
                               [](Terminal) -> std::uint64_t { return 1; },
                               [](Slp::Empty) -> std::uint64_t { return 0; },
                               [&](const Slp::Pair& p) -> std::uint64_t {
                                 if (p.left >= i || p.right >= i) {
                                   throw Error(ErrorKind::InvalidHandle, "SLP rule references a later rule");
                                 }
                                 return saturating_add(length[p.left], length[p.right]);
                               },
                           },
                           slp.rules[i]);
  }
  if (length[slp.start()] > max_length) {
    throw Error(ErrorKind::BudgetExceeded, "SLP expansion longer than " + std::to_string(max_length));
  }
  std::vector<Terminal> out;
  out.reserve(length[slp.start()]);
  std::vector<std::size_t> stack{slp.start()};
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    std::visit(detail::Overloaded{
                   [&](Terminal t) { out.push_back(t); },
                   [](Slp::Empty) {},
                   [&](const Slp::Pair& p) {
                     stack.push_back(p.right);
                     stack.push_back(p.left);
                   },
               },
               slp.rules[i]);
  }
  return out;
}

std::string format_slp(const Slp& slp, const SymbolTable& labels) {
  std::ostringstream out;
  for (std::size_t i = 0; i < slp.rules.size(); ++i) {
    out << 'X' << i + 1 << " -> ";
    std::visit(detail::Overloaded{
                   [&](Terminal t) { out << labels.name(t); },
                   [&](Slp::Empty) { out << "eps"; },
                   [&](const Slp::Pair& p) { out << 'X' << p.left + 1 << " X" << p.right + 1; },
               },
               slp.rules[i]);
    out << '\n';
  }
  return out.str();
}

}  // namespace cflr
