// Index construction on path graphs with S -> a S | a, the sparse case where
// the linear builder should scale as m*n and saturation as n^3.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cflr/grammar.hpp"
#include "cflr/graph.hpp"
#include "cflr/lin_dist_index.hpp"
#include "cflr/lin_index.hpp"
#include "cflr/sat_index.hpp"
#include "cflr/witness_dag.hpp"

namespace {

using namespace cflr;

const Grammar& chain_grammar() {
  static const Grammar g = parse_grammar("@start S\nS -> a S | a\n");
  return g;
}

LabeledGraph path(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1), 0});
  return LabeledGraph(n, 1, std::move(edges));
}

// m = 2n random edges over labels {a, b}; fixed seed so runs compare.
LabeledGraph sparse_random(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_int_distribution<std::size_t> vertex(0, n - 1);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    edges.push_back({static_cast<Vertex>(vertex(rng)), static_cast<Vertex>(vertex(rng)),
                     static_cast<std::uint32_t>(rng() & 1)});
  }
  return LabeledGraph(n, 2, std::move(edges));
}

void report(benchmark::State& state, const BuildStats& stats) {
  state.counters["entries"] = static_cast<double>(stats.entries);
  state.counters["propagations"] = static_cast<double>(stats.propagation_count());
}

void BM_SatPath(benchmark::State& state) {
  const Grammar g = to_cnf(chain_grammar());
  const LabeledGraph graph = path(static_cast<std::size_t>(state.range(0)));
  BuildStats stats;
  for (auto _ : state) {
    auto index = sat_build(g, graph);
    stats = index.stats;
    benchmark::DoNotOptimize(index);
  }
  report(state, stats);
  state.SetComplexityN(state.range(0));
}

void BM_LinPath(benchmark::State& state) {
  const Grammar g = to_talnf(chain_grammar());
  const LabeledGraph graph = path(static_cast<std::size_t>(state.range(0)));
  BuildStats stats;
  for (auto _ : state) {
    auto index = lin_build(g, graph);
    stats = index.stats;
    benchmark::DoNotOptimize(index);
  }
  report(state, stats);
  state.SetComplexityN(state.range(0));
}

void BM_LinDistPath(benchmark::State& state) {
  const Grammar g = to_talnf(chain_grammar());
  const LabeledGraph graph = path(static_cast<std::size_t>(state.range(0)));
  BuildStats stats;
  for (auto _ : state) {
    auto table = lindist_build(g, graph);
    stats = table.stats;
    benchmark::DoNotOptimize(table);
  }
  report(state, stats);
  state.SetComplexityN(state.range(0));
}

const Grammar& ab_grammar() {
  // a^k b^k: linear but not regular.
  static const Grammar g = parse_grammar("@start S\nS -> a S b | a b\n");
  return g;
}

void BM_SatSparse(benchmark::State& state) {
  const Grammar g = to_cnf(ab_grammar());
  const LabeledGraph graph = sparse_random(static_cast<std::size_t>(state.range(0)));
  BuildStats stats;
  for (auto _ : state) {
    auto index = sat_build(g, graph);
    stats = index.stats;
    benchmark::DoNotOptimize(index);
  }
  report(state, stats);
}

void BM_LinSparse(benchmark::State& state) {
  const Grammar g = to_talnf(ab_grammar());
  const LabeledGraph graph = sparse_random(static_cast<std::size_t>(state.range(0)));
  BuildStats stats;
  for (auto _ : state) {
    auto index = lin_build(g, graph);
    stats = index.stats;
    benchmark::DoNotOptimize(index);
  }
  report(state, stats);
}

// Wraps every witness into the shared DAG, then emits the SLP of the
// longest accepted path.
void BM_WrapAndSlp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grammar g = to_talnf(chain_grammar());
  const auto index = lin_build(g, path(n));
  for (auto _ : state) {
    const WitnessDag dag = swd_wrap(index.relations, index.witnesses);
    const auto root = dag.root(g.start(), 0, static_cast<Vertex>(n - 1));
    benchmark::DoNotOptimize(emit_slp(dag, *root));
  }
}

}  // namespace

BENCHMARK(BM_SatPath)->RangeMultiplier(2)->Range(64, 512)->Complexity(benchmark::oNCubed);
BENCHMARK(BM_LinPath)->RangeMultiplier(2)->Range(64, 512)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_LinDistPath)->RangeMultiplier(2)->Range(64, 512)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_SatSparse)->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(BM_LinSparse)->RangeMultiplier(2)->Range(64, 512);
BENCHMARK(BM_WrapAndSlp)->RangeMultiplier(2)->Range(64, 256);

BENCHMARK_MAIN();
