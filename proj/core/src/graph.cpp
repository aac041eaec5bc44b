#include "cflr/graph.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <optional>
#include <sstream>

#include "cflr/error.hpp"

namespace cflr {

LabeledGraph::LabeledGraph(std::size_t vertex_count, std::size_t label_count, std::vector<Edge> edges)
    : n_(vertex_count), labels_(label_count), edges_(std::move(edges)) {
  for (const Edge& e : edges_) {
    if (e.u >= n_ || e.v >= n_) {
      throw Error(ErrorKind::VertexOutOfRange, "edge endpoint outside [0, " + std::to_string(n_) + ")");
    }
    if (e.label >= labels_) throw Error(ErrorKind::UnknownLabel, "edge label id out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  by_label_ = edges_;
  std::stable_sort(by_label_.begin(), by_label_.end(),
                   [](const Edge& a, const Edge& b) { return a.label < b.label; });
  by_label_offsets_.assign(labels_ + 1, 0);
  for (const Edge& e : by_label_) ++by_label_offsets_[e.label + 1];
  for (std::size_t a = 0; a < labels_; ++a) by_label_offsets_[a + 1] += by_label_offsets_[a];

  const std::size_t slots = labels_ * n_;
  in_offsets_.assign(slots + 1, 0);
  out_offsets_.assign(slots + 1, 0);
  for (const Edge& e : edges_) {
    ++in_offsets_[e.label * n_ + e.v + 1];
    ++out_offsets_[e.label * n_ + e.u + 1];
  }
  for (std::size_t i = 0; i < slots; ++i) {
    in_offsets_[i + 1] += in_offsets_[i];
    out_offsets_[i + 1] += out_offsets_[i];
  }
  in_.resize(edges_.size());
  out_.resize(edges_.size());
  auto in_fill = in_offsets_;
  auto out_fill = out_offsets_;
  for (const Edge& e : edges_) {
    in_[in_fill[e.label * n_ + e.v]++] = e.u;
    out_[out_fill[e.label * n_ + e.u]++] = e.v;
  }
}

std::span<const Edge> LabeledGraph::edges_with_label(Terminal label) const {
  if (label >= labels_) return {};
  return std::span<const Edge>(by_label_).subspan(by_label_offsets_[label],
                                                  by_label_offsets_[label + 1] - by_label_offsets_[label]);
}

std::span<const Vertex> LabeledGraph::in(Terminal label, Vertex v) const {
  const std::size_t slot = label * n_ + v;
  return std::span<const Vertex>(in_).subspan(in_offsets_[slot], in_offsets_[slot + 1] - in_offsets_[slot]);
}

std::span<const Vertex> LabeledGraph::out(Terminal label, Vertex u) const {
  const std::size_t slot = label * n_ + u;
  return std::span<const Vertex>(out_).subspan(out_offsets_[slot], out_offsets_[slot + 1] - out_offsets_[slot]);
}

bool LabeledGraph::has_edge(Vertex u, Vertex v, Terminal label) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v, label});
}

namespace {

std::optional<std::uint64_t> parse_uint(std::string_view tok) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
  return value;
}

}  // namespace

LabeledGraph parse_graph(std::string_view text, const SymbolTable& labels) {
  std::optional<std::size_t> declared;
  std::vector<Edge> edges;
  std::uint64_t max_id = 0;
  bool any_edge = false;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(std::move(t));
    if (tok.empty() || tok[0].front() == '#') continue;

    if (tok[0] == "@vertices") {
      if (tok.size() != 2) throw SyntaxError(lineno, "@vertices takes one count");
      if (declared) throw SyntaxError(lineno, "duplicate @vertices header");
      auto count = parse_uint(tok[1]);
      if (!count) throw SyntaxError(lineno, "invalid vertex count '" + tok[1] + "'");
      if (*count > std::numeric_limits<Vertex>::max()) {
        throw Error(ErrorKind::VertexOutOfRange, "line " + std::to_string(lineno) + ": vertex count overflow");
      }
      declared = static_cast<std::size_t>(*count);
      continue;
    }
    if (tok.size() != 3) throw SyntaxError(lineno, "expected 'u v label'");
    auto u = parse_uint(tok[0]);
    auto v = parse_uint(tok[1]);
    if (!u || !v) throw SyntaxError(lineno, "vertex ids must be non-negative integers");
    auto label = labels.find(tok[2]);
    if (!label) {
      throw Error(ErrorKind::UnknownLabel,
                  "line " + std::to_string(lineno) + ": label '" + tok[2] + "' is not a grammar terminal");
    }
    const std::uint64_t hi = std::max(*u, *v);
    const std::uint64_t limit = declared ? *declared : kMaxImplicitVertices;
    if (hi >= limit) {
      throw Error(ErrorKind::VertexOutOfRange,
                  "line " + std::to_string(lineno) + ": vertex id " + std::to_string(hi) + " overflows");
    }
    max_id = std::max(max_id, hi);
    any_edge = true;
    edges.push_back({static_cast<Vertex>(*u), static_cast<Vertex>(*v), *label});
  }
  // A header that appears after edges must still cover them.
  if (declared && any_edge && max_id >= *declared) {
    throw Error(ErrorKind::VertexOutOfRange, "vertex id " + std::to_string(max_id) + " overflows @vertices");
  }
  const std::size_t n = declared ? *declared : (any_edge ? static_cast<std::size_t>(max_id) + 1 : 0);
  return LabeledGraph(n, labels.size(), std::move(edges));
}

std::string serialize_graph(const LabeledGraph& g, const SymbolTable& labels) {
  std::ostringstream out;
  out << "@vertices " << g.vertex_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << labels.name(e.label) << '\n';
  return out.str();
}

std::vector<Terminal> trace_of(const Path& p) {
  std::vector<Terminal> trace;
  trace.reserve(p.edges.size());
  for (const Edge& e : p.edges) trace.push_back(e.label);
  return trace;
}

bool is_walk_in(const Path& p, const LabeledGraph& g) {
  Vertex at = p.start;
  for (const Edge& e : p.edges) {
    if (e.u != at || !g.has_edge(e.u, e.v, e.label)) return false;
    at = e.v;
  }
  return true;
}

std::string format_path(const Path& p, const SymbolTable& labels) {
  std::ostringstream out;
  for (const Edge& e : p.edges) out << e.u << ' ' << e.v << ' ' << labels.name(e.label) << '\n';
  return out.str();
}

}  // namespace cflr
