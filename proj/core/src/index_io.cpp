#include "cflr/index_io.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "cflr/error.hpp"
#include "overloaded.hpp"

namespace cflr {

std::string_view to_string(IndexKind kind) noexcept {
  switch (kind) {
    case IndexKind::Sat: return "sat";
    case IndexKind::Lin: return "lin";
    case IndexKind::LinDist: return "lindist";
  }
  return "sat";
}

const Grammar& StoredIndex::grammar() const {
  return std::visit(detail::Overloaded{[](const ReachabilityIndex& i) -> const Grammar& { return i.grammar; },
                                       [](const DistanceTable& d) -> const Grammar& { return d.grammar(); }},
                    data);
}

std::size_t StoredIndex::vertex_count() const {
  return std::visit(detail::Overloaded{[](const ReachabilityIndex& i) { return i.relations.vertex_count(); },
                                       [](const DistanceTable& d) { return d.vertex_count(); }},
                    data);
}

RelationSet StoredIndex::relations() const {
  return std::visit(detail::Overloaded{[](const ReachabilityIndex& i) { return i.relations; },
                                       [](const DistanceTable& d) { return d.relations(); }},
                    data);
}

const WitnessTable& StoredIndex::witnesses() const {
  return std::visit(detail::Overloaded{[](const ReachabilityIndex& i) -> const WitnessTable& { return i.witnesses; },
                                       [](const DistanceTable& d) -> const WitnessTable& { return d.parents(); }},
                    data);
}

bool StoredIndex::query(Vertex s, Vertex t) const {
  const std::size_t n = vertex_count();
  if (s >= n || t >= n) {
    throw Error(ErrorKind::VertexOutOfRange, "query vertex outside [0, " + std::to_string(n) + ")");
  }
  return std::visit(detail::Overloaded{[&](const ReachabilityIndex& i) { return i.query(s, t); },
                                       [&](const DistanceTable& d) { return d.finite(d.grammar().start(), s, t); }},
                    data);
}

namespace {

void write_record(std::ostream& out, const WitnessRecord& rec) {
  std::visit(detail::Overloaded{
                 [&](std::monostate) { out << "none"; },
                 [&](const witness::Term& t) { out << "term " << t.label; },
                 [&](const witness::Eps&) { out << "eps"; },
                 [&](const witness::Bin& b) { out << "bin " << b.left << ' ' << b.right << ' ' << b.mid; },
                 [&](const witness::LinL& l) { out << "linl " << l.label << ' ' << l.rest << ' ' << l.mid; },
                 [&](const witness::LinR& r) { out << "linr " << r.rest << ' ' << r.label << ' ' << r.mid; },
             },
             rec);
}

void write_header(std::ostream& out, IndexKind kind, std::size_t n, const Grammar& g) {
  out << "cflr-index 1\n";
  out << "kind " << to_string(kind) << '\n';
  out << "vertices " << n << '\n';
  const std::string text = format_grammar(g);
  const auto lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
  out << "grammar " << lines << '\n' << text;
}

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::IndexFormat, what); }

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string line() {
    std::string s;
    if (!std::getline(in_, s)) malformed("unexpected end of index file");
    ++lineno_;
    return s;
  }

  // Reads `keyword value` and returns value.
  std::string field(std::string_view keyword) {
    std::istringstream fields(line());
    std::string key, value, extra;
    fields >> key >> value;
    if (key != keyword || value.empty() || (fields >> extra)) {
      malformed("line " + std::to_string(lineno_) + ": expected '" + std::string(keyword) + " <value>'");
    }
    return value;
  }

  std::size_t number(std::string_view keyword) {
    const std::string v = field(keyword);
    try {
      std::size_t used = 0;
      const auto x = std::stoull(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return static_cast<std::size_t>(x);
    } catch (const std::exception&) {
      malformed("line " + std::to_string(lineno_) + ": invalid number '" + v + "'");
    }
  }

  std::size_t lineno() const noexcept { return lineno_; }

 private:
  std::istream& in_;
  std::size_t lineno_ = 0;
};

WitnessRecord parse_record(std::istringstream& fields, std::size_t lineno) {
  std::string tag;
  fields >> tag;
  auto num = [&]() -> std::uint32_t {
    long long x = -1;
    if (!(fields >> x) || x < 0 || x > std::numeric_limits<std::uint32_t>::max()) {
      malformed("line " + std::to_string(lineno) + ": bad witness field");
    }
    return static_cast<std::uint32_t>(x);
  };
  if (tag == "term") return witness::Term{num()};
  if (tag == "eps") return witness::Eps{};
  if (tag == "bin") {
    const auto b = num();
    const auto c = num();
    return witness::Bin{b, c, num()};
  }
  if (tag == "linl") {
    const auto a = num();
    const auto b = num();
    return witness::LinL{a, b, num()};
  }
  if (tag == "linr") {
    const auto b = num();
    const auto a = num();
    return witness::LinR{b, a, num()};
  }
  malformed("line " + std::to_string(lineno) + ": unknown witness tag '" + tag + "'");
}

}  // namespace

void write_index(std::ostream& out, IndexKind kind, const ReachabilityIndex& index) {
  if (kind == IndexKind::LinDist) malformed("distance indices are written from a DistanceTable");
  const std::size_t n = index.relations.vertex_count();
  write_header(out, kind, n, index.grammar);
  out << "entries " << index.relations.true_count() << '\n';
  for (Nonterminal a = 0; a < index.relations.nonterminal_count(); ++a) {
    for (Vertex u = 0; u < n; ++u) {
      index.relations.matrix(a).for_each_in_row(u, [&](std::size_t v) {
        out << a << ' ' << u << ' ' << v << ' ';
        write_record(out, index.witnesses.at(a, u, static_cast<Vertex>(v)));
        out << '\n';
      });
    }
  }
  out << "end\n";
}

void write_index(std::ostream& out, const DistanceTable& table) {
  const std::size_t n = table.vertex_count();
  write_header(out, IndexKind::LinDist, n, table.grammar());
  std::size_t finite = 0;
  for (Nonterminal a = 0; a < table.nonterminal_count(); ++a) {
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = 0; v < n; ++v) finite += table.finite(a, u, v) ? 1 : 0;
    }
  }
  out << "entries " << finite << '\n';
  for (Nonterminal a = 0; a < table.nonterminal_count(); ++a) {
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = 0; v < n; ++v) {
        if (!table.finite(a, u, v)) continue;
        out << a << ' ' << u << ' ' << v << ' ' << table.distance(a, u, v) << ' ';
        write_record(out, table.parents().at(a, u, v));
        out << '\n';
      }
    }
  }
  out << "end\n";
}

StoredIndex read_index(std::istream& in) {
  Reader r(in);
  if (r.line() != "cflr-index 1") malformed("not a cflr index (missing 'cflr-index 1' header)");
  const std::string kind_name = r.field("kind");
  IndexKind kind;
  if (kind_name == "sat") {
    kind = IndexKind::Sat;
  } else if (kind_name == "lin") {
    kind = IndexKind::Lin;
  } else if (kind_name == "lindist") {
    kind = IndexKind::LinDist;
  } else {
    malformed("unknown index kind '" + kind_name + "'");
  }
  const std::size_t n = r.number("vertices");
  const std::size_t grammar_lines = r.number("grammar");
  std::string text;
  for (std::size_t i = 0; i < grammar_lines; ++i) text += r.line() + '\n';
  Grammar g = parse_grammar(text);
  const std::size_t nts = g.nonterminal_count();
  const std::size_t entries = r.number("entries");

  auto check_entry = [&](std::uint64_t a, std::uint64_t u, std::uint64_t v) {
    if (a >= nts || u >= n || v >= n) malformed("line " + std::to_string(r.lineno()) + ": entry out of range");
  };

  if (kind == IndexKind::LinDist) {
    DistanceTable table(std::move(g), n);
    for (std::size_t i = 0; i < entries; ++i) {
      std::istringstream fields(r.line());
      std::uint64_t a = 0, u = 0, v = 0, d = 0;
      if (!(fields >> a >> u >> v >> d)) malformed("line " + std::to_string(r.lineno()) + ": bad entry");
      check_entry(a, u, v);
      if (d >= kInfiniteDistance) malformed("line " + std::to_string(r.lineno()) + ": distance overflow");
      const auto rec = parse_record(fields, r.lineno());
      if (!table.discover(static_cast<Nonterminal>(a), static_cast<Vertex>(u), static_cast<Vertex>(v),
                          static_cast<Distance>(d), rec)) {
        malformed("line " + std::to_string(r.lineno()) + ": duplicate entry");
      }
    }
    table.stats.entries = entries;
    if (r.line() != "end") malformed("missing 'end' trailer");
    return {kind, std::move(table)};
  }

  ReachabilityIndex index{g, RelationSet(nts, n), WitnessTable(nts, n), {}};
  for (std::size_t i = 0; i < entries; ++i) {
    std::istringstream fields(r.line());
    std::uint64_t a = 0, u = 0, v = 0;
    if (!(fields >> a >> u >> v)) malformed("line " + std::to_string(r.lineno()) + ": bad entry");
    check_entry(a, u, v);
    const auto rec = parse_record(fields, r.lineno());
    const auto na = static_cast<Nonterminal>(a);
    const auto nu = static_cast<Vertex>(u);
    const auto nv = static_cast<Vertex>(v);
    if (!index.relations.insert(na, nu, nv)) malformed("line " + std::to_string(r.lineno()) + ": duplicate entry");
    index.witnesses.record(na, nu, nv, rec);
  }
  index.stats.entries = entries;
  if (r.line() != "end") malformed("missing 'end' trailer");
  return {kind, std::move(index)};
}

}  // namespace cflr
