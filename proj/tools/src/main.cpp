// cflr: build and query CFL-reachability indices from the shell.
//
// Exit status: 0 on success, 1 on domain errors (bad grammar, bad index,
// out-of-range vertex, missing file), 2 on usage errors.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cflr/error.hpp"
#include "cflr/grammar.hpp"
#include "cflr/graph.hpp"
#include "cflr/index_io.hpp"
#include "cflr/lin_dist_index.hpp"
#include "cflr/lin_index.hpp"
#include "cflr/oracle.hpp"
#include "cflr/sat_index.hpp"
#include "cflr/schema_census.hpp"
#include "cflr/witness_dag.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cflr::Error(cflr::ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path default_out_dir() {
  if (const char* env = std::getenv("CFLR_OUT_DIR"); env && *env) return env;
  return ".";
}

cflr::Vertex checked_vertex(long long v, std::size_t n) {
  if (v < 0 || static_cast<unsigned long long>(v) >= n) {
    throw cflr::Error(cflr::ErrorKind::VertexOutOfRange,
                      "vertex " + std::to_string(v) + " outside [0, " + std::to_string(n) + ")");
  }
  return static_cast<cflr::Vertex>(v);
}

cflr::StoredIndex load_index(const fs::path& path) {
  std::istringstream in(read_file(path));
  return cflr::read_index(in);
}

void print_stats(std::string_view kind, const cflr::LabeledGraph& graph, const cflr::Grammar& g,
                 const cflr::BuildStats& stats) {
  std::cerr << "index=" << kind << '\n'
            << "vertices=" << graph.vertex_count() << '\n'
            << "edges=" << graph.edge_count() << '\n'
            << "productions=" << g.productions().size() << '\n'
            << "nonterminals=" << g.nonterminal_count() << '\n'
            << "entries=" << stats.entries << '\n'
            << "dequeues=" << stats.dequeues << '\n'
            << "words_scanned=" << stats.words_scanned << '\n'
            << "triples_visited=" << stats.triples_visited << '\n'
            << "propagations=" << stats.propagation_count() << '\n'
            << "seconds=" << stats.seconds << '\n';
}

struct BuildArgs {
  std::string grammar;
  std::string edges;
  std::string index = "sat";
  std::string output;
  bool no_normalize = false;
};

int run_build(const BuildArgs& a) {
  cflr::Grammar g = cflr::parse_grammar(read_file(a.grammar));
  if (a.index == "sat") {
    if (!a.no_normalize) g = cflr::to_cnf(g);
  } else if (!a.no_normalize) {
    g = cflr::to_talnf(g);
  }
  const cflr::LabeledGraph graph = cflr::parse_graph(read_file(a.edges), g.terminals());

  std::ostringstream out;
  if (a.index == "lindist") {
    const cflr::DistanceTable table = cflr::lindist_build(g, graph);
    print_stats(a.index, graph, g, table.stats);
    cflr::write_index(out, table);
  } else {
    const bool sat = a.index == "sat";
    const cflr::ReachabilityIndex index = sat ? cflr::sat_build(g, graph) : cflr::lin_build(g, graph);
    print_stats(a.index, graph, g, index.stats);
    cflr::write_index(out, sat ? cflr::IndexKind::Sat : cflr::IndexKind::Lin, index);
  }
  fs::path target = a.output;
  if (target.is_relative() && std::getenv("CFLR_OUT_DIR")) target = default_out_dir() / target;
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  std::ofstream file(target, std::ios::binary);
  if (!(file << out.str())) throw cflr::Error(cflr::ErrorKind::Io, "cannot write " + target.string());
  return kExitOk;
}

int run_query(const std::string& path, long long s, long long t) {
  const cflr::StoredIndex index = load_index(path);
  const std::size_t n = index.vertex_count();
  std::cout << (index.query(checked_vertex(s, n), checked_vertex(t, n)) ? "true" : "false") << '\n';
  return kExitOk;
}

int run_witness(const std::string& path, long long s, long long t, const std::string& format) {
  const cflr::StoredIndex index = load_index(path);
  const std::size_t n = index.vertex_count();
  const cflr::Vertex u = checked_vertex(s, n);
  const cflr::Vertex v = checked_vertex(t, n);
  const cflr::Nonterminal start = index.grammar().start();
  if (!index.query(u, v)) {
    throw cflr::Error(cflr::ErrorKind::NoWitness, "no accepted path from " + std::to_string(u) + " to " +
                                                      std::to_string(v));
  }
  const cflr::WitnessDag dag = cflr::swd_wrap(index.relations(), index.witnesses());
  const cflr::NodeHandle root = *dag.root(start, u, v);
  const auto& labels = index.grammar().terminals();
  if (format == "slp") {
    const cflr::Slp slp = cflr::emit_slp(dag, root);
    std::cout << "rules=" << slp.rules.size() << " length=" << dag.path_length(root) << '\n'
              << cflr::format_slp(slp, labels);
  } else {
    const cflr::Path p = cflr::expand_explicit(dag, root);
    std::cout << "length=" << p.length() << '\n' << cflr::format_path(p, labels);
  }
  return kExitOk;
}

int run_shortest(const std::string& path, long long s, long long t) {
  const cflr::StoredIndex index = load_index(path);
  const auto* table = std::get_if<cflr::DistanceTable>(&index.data);
  if (!table) {
    throw cflr::Error(cflr::ErrorKind::UnsupportedForm, "shortest needs an index built with --index lindist");
  }
  const std::size_t n = table->vertex_count();
  const auto p = cflr::shortest_accepted_path(*table, checked_vertex(s, n), checked_vertex(t, n));
  if (!p) {
    std::cout << "dist=inf\n";
    return kExitOk;
  }
  std::cout << "dist=" << p->length() << '\n' << cflr::format_path(*p, table->grammar().terminals());
  return kExitOk;
}

int run_classify(const std::string& grammar) {
  std::cout << cflr::to_string(cflr::classify(cflr::parse_grammar(read_file(grammar)))) << '\n';
  return kExitOk;
}

struct OracleArgs {
  std::string grammar;
  std::string edges;
  std::optional<long long> source, target;
  std::size_t max_len = 8;
};

// Reference answers: all accepted pairs, or the accepted walks between two
// vertices when both endpoints are given.
int run_oracle(const OracleArgs& a) {
  const cflr::Grammar g = cflr::parse_grammar(read_file(a.grammar));
  const cflr::LabeledGraph graph = cflr::parse_graph(read_file(a.edges), g.terminals());
  const std::size_t n = graph.vertex_count();
  if (a.source && a.target) {
    const auto walks = cflr::oracle::enumerate_accepted(g, graph, checked_vertex(*a.source, n),
                                                        checked_vertex(*a.target, n), a.max_len);
    for (const auto& w : walks) {
      std::cout << "walk length=" << w.length << '\n' << cflr::format_path(w.path, g.terminals());
    }
    std::cout << "walks=" << walks.size() << '\n';
    return kExitOk;
  }
  const cflr::Grammar cnf = cflr::to_cnf(g);
  const cflr::RelationSet rel = cflr::oracle::naive_fixpoint(cnf, graph);
  for (cflr::Vertex u = 0; u < n; ++u) {
    for (cflr::Vertex v = 0; v < n; ++v) {
      if (rel.contains(cnf.start(), u, v)) std::cout << u << ' ' << v << '\n';
    }
  }
  return kExitOk;
}

struct CensusArgs {
  std::string root;
  std::string manifest;
  std::string out;
  unsigned threads = 0;
};

int run_census(const CensusArgs& a) {
  std::optional<cflr::census::Manifest> manifest;
  if (!a.manifest.empty()) {
    manifest = cflr::census::Json::parse(read_file(a.manifest), nullptr, false);
    if (manifest->is_discarded()) throw cflr::Error(cflr::ErrorKind::InvalidJson, "manifest is not valid JSON");
  }
  const auto report = cflr::census::run_census(a.root, manifest, a.threads);
  const fs::path out = a.out.empty() ? default_out_dir() / "census" : fs::path(a.out);
  cflr::census::write_report(report, out);
  std::cout << cflr::census::format_aggregate(report);
  if (report.skipped_files > 0) std::cerr << "warning: skipped " << report.skipped_files << " file(s)\n";
  for (const auto& why : report.skipped) std::cerr << "  " << why << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CFL-reachability indices over edge-labeled graphs"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Reserved for randomized features; currently unused");

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Build and serialize an index");
  build_cmd->add_option("-g,--grammar", build.grammar, "Grammar file")->required();
  build_cmd->add_option("-e,--edges", build.edges, "Edge list file")->required();
  build_cmd->add_option("--index", build.index, "Index kind")
      ->check(CLI::IsMember({"sat", "lin", "lindist"}))
      ->capture_default_str();
  build_cmd->add_option("-o,--output", build.output, "Index output file")->required();
  build_cmd->add_flag("--no-normalize", build.no_normalize, "Use the grammar as given (must already be in form)");

  std::string index_path;
  long long s = 0, t = 0;
  auto add_query_args = [&](CLI::App* cmd) {
    cmd->add_option("index", index_path, "Index file")->required();
    cmd->add_option("s", s, "Source vertex")->required();
    cmd->add_option("t", t, "Target vertex")->required();
  };
  auto* query_cmd = app.add_subcommand("query", "Is t reachable from s by an accepted path?");
  add_query_args(query_cmd);

  std::string format = "explicit";
  auto* witness_cmd = app.add_subcommand("witness", "Print a witness path");
  add_query_args(witness_cmd);
  witness_cmd->add_option("--format", format, "Output form")
      ->check(CLI::IsMember({"explicit", "slp"}))
      ->capture_default_str();

  auto* shortest_cmd = app.add_subcommand("shortest", "Shortest accepted path (lindist index)");
  add_query_args(shortest_cmd);

  std::string classify_grammar;
  auto* classify_cmd = app.add_subcommand("classify", "Print the grammar's normal form");
  classify_cmd->add_option("-g,--grammar", classify_grammar, "Grammar file")->required();

  CensusArgs census;
  auto* census_cmd = app.add_subcommand("census", "Linearity census over a directory of JSON schemas");
  census_cmd->add_option("dir", census.root, "Corpus root")->required();
  census_cmd->add_option("--splits", census.manifest, "Manifest mapping files to splits");
  census_cmd->add_option("--out", census.out, "Report directory (default $CFLR_OUT_DIR/census)");
  census_cmd->add_option("--threads", census.threads, "Worker threads (0 = hardware)");

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Reference answers by naive evaluation");
  oracle_cmd->group("");
  oracle_cmd->add_option("-g,--grammar", oracle.grammar, "Grammar file")->required();
  oracle_cmd->add_option("-e,--edges", oracle.edges, "Edge list file")->required();
  oracle_cmd->add_option("--from", oracle.source, "Walk source");
  oracle_cmd->add_option("--to", oracle.target, "Walk target");
  oracle_cmd->add_option("--max-len", oracle.max_len, "Walk length bound")->check(CLI::Range(0, 12));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*build_cmd) return run_build(build);
    if (*query_cmd) return run_query(index_path, s, t);
    if (*witness_cmd) return run_witness(index_path, s, t, format);
    if (*shortest_cmd) return run_shortest(index_path, s, t);
    if (*classify_cmd) return run_classify(classify_grammar);
    if (*census_cmd) return run_census(census);
    if (*oracle_cmd) return run_oracle(oracle);
  } catch (const cflr::Error& e) {
    std::cerr << "error: " << cflr::to_string(e.kind()) << ": " << e.what() << '\n';
    return kExitDomain;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: io: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
