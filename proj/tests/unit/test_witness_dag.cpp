#include <doctest.h>

#include "cflr/error.hpp"
#include "cflr/sat_index.hpp"
#include "cflr/witness_dag.hpp"

using namespace cflr;

namespace {

// X_0 = a self-loop edge, X_{i+1} = X_i X_i.
NodeHandle doubling_chain(WitnessDag& dag, std::size_t depth) {
  NodeHandle h = dag.make_edge(0, 0, 0);
  for (std::size_t i = 0; i < depth; ++i) h = dag.make_concat(h, h);
  return h;
}

}  // namespace

TEST_CASE("hash-consing returns the same handle") {
  WitnessDag dag(1, 4);
  const NodeHandle e1 = dag.make_edge(1, 2, 0);
  const NodeHandle e2 = dag.make_edge(1, 2, 0);
  CHECK(e1 == e2);
  CHECK(dag.make_edge(1, 2, 1) != e1);
  const NodeHandle c1 = dag.make_concat(e1, dag.make_edge(2, 3, 1));
  const NodeHandle c2 = dag.make_concat(e2, dag.make_edge(2, 3, 1));
  CHECK(c1 == c2);
  CHECK(dag.make_eps(3) == dag.make_eps(3));
  CHECK(dag.node_count() == 5);
  CHECK(dag.constructor_calls() > dag.node_count());
}

TEST_CASE("concat checks handles and endpoints") {
  WitnessDag dag(1, 4);
  const NodeHandle e = dag.make_edge(1, 2, 0);
  const NodeHandle f = dag.make_edge(3, 0, 0);
  CHECK_THROWS_AS(dag.make_concat(e, f), Error);
  CHECK_THROWS_AS(dag.make_concat(e, 99), Error);
  CHECK_THROWS_AS(dag.node(99), Error);
}

TEST_CASE("trivial expansions") {
  WitnessDag dag(1, 8);
  CHECK(expand_explicit(dag, dag.make_eps(7)) == Path{7, {}});
  const NodeHandle ab = dag.make_concat(dag.make_edge(1, 2, 0), dag.make_edge(2, 3, 1));
  const Path p = expand_explicit(dag, ab);
  CHECK(p == Path{1, {{1, 2, 0}, {2, 3, 1}}});
  CHECK(trace_of(p) == std::vector<Terminal>{0, 1});
  CHECK(dag.path_length(ab) == 2);
}

TEST_CASE("SLP for a single edge and a two-edge path") {
  WitnessDag dag(1, 4);
  const NodeHandle a = dag.make_edge(1, 2, 0);
  const Slp one = emit_slp(dag, a);
  REQUIRE(one.rules.size() == 1);
  CHECK(std::get<Terminal>(one.rules[0]) == 0);

  const NodeHandle ab = dag.make_concat(a, dag.make_edge(2, 3, 1));
  const Slp two = emit_slp(dag, ab);
  REQUIRE(two.rules.size() == 3);
  CHECK(std::get<Terminal>(two.rules[0]) == 0);
  CHECK(std::get<Terminal>(two.rules[1]) == 1);
  CHECK(std::get<Slp::Pair>(two.rules[2]) == Slp::Pair{0, 1});
  CHECK(expand_slp(two) == std::vector<Terminal>{0, 1});

  SymbolTable labels;
  labels.intern("a");
  labels.intern("b");
  CHECK(format_slp(two, labels) == "X1 -> a\nX2 -> b\nX3 -> X1 X2\n");
}

TEST_CASE("doubling chain compresses to a logarithmic SLP") {
  WitnessDag dag(1, 1);
  const NodeHandle root = doubling_chain(dag, 10);
  CHECK(dag.node_count() == 11);
  CHECK(dag.path_length(root) == 1024);
  const Slp slp = emit_slp(dag, root);
  CHECK(slp.rules.size() == 11);
  const auto word = expand_slp(slp, 1024);
  CHECK(word.size() == 1024);
  CHECK(word == trace_of(expand_explicit(dag, root)));
  CHECK_THROWS_AS(expand_slp(slp, 1023), Error);
}

TEST_CASE("SLP rules only reference earlier rules") {
  WitnessDag dag(1, 1);
  const Slp slp = emit_slp(dag, doubling_chain(dag, 6));
  for (std::size_t i = 0; i < slp.rules.size(); ++i) {
    if (const auto* p = std::get_if<Slp::Pair>(&slp.rules[i])) {
      CHECK(p->left < i);
      CHECK(p->right < i);
    }
  }
}

TEST_CASE("wrapping a saturation index") {
  const Grammar g0 = parse_grammar("S -> a S b | a b");
  const Grammar g = to_cnf(g0);
  const LabeledGraph graph = parse_graph("0 1 a\n1 2 a\n2 3 b\n3 0 b", g.terminals());
  const auto index = sat_build(g, graph);
  const WitnessDag dag = swd_wrap(index.relations, index.witnesses);
  CHECK(dag.root_count() == index.relations.true_count());
  const auto root = dag.root(g.start(), 0, 0);
  REQUIRE(root.has_value());
  CHECK(expand_explicit(dag, *root) == extract_path(index.witnesses, g.start(), 0, 0));
  CHECK(expand_explicit(dag, *root) == Path{0, {{0, 1, 0}, {1, 2, 0}, {2, 3, 1}, {3, 0, 1}}});
  CHECK_FALSE(dag.root(g.start(), 0, 3).has_value());
}

TEST_CASE("single term entry wraps to one edge node") {
  RelationSet rel(1, 3);
  WitnessTable w(1, 3);
  rel.insert(0, 1, 2);
  w.record(0, 1, 2, witness::Term{0});
  const WitnessDag dag = swd_wrap(rel, w);
  CHECK(dag.node_count() == 1);
  CHECK(dag.root_count() == 1);
}

TEST_CASE("wrapping detects missing and dangling records") {
  RelationSet rel(2, 3);
  WitnessTable w(2, 3);
  rel.insert(0, 0, 1);
  CHECK_THROWS_AS(swd_wrap(rel, w), Error);

  w.record(0, 0, 1, witness::Bin{1, 1, 2});  // children are false entries
  CHECK_THROWS_AS(swd_wrap(rel, w), Error);

  RelationSet cyc(1, 2);
  WitnessTable cw(1, 2);
  cyc.insert(0, 0, 1);
  cw.record(0, 0, 1, witness::LinR{0, 0, 1});  // refers to itself via (0, 0, 1)
  cyc.insert(0, 0, 0);
  cw.record(0, 0, 0, witness::Eps{});
  try {
    swd_wrap(cyc, cw);
    FAIL("expected MissingWitness");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingWitness);
  }
}
