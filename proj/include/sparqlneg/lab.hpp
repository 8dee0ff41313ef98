#pragma once
// The experiment bench: finite graph spaces, pattern equivalence checking
// with replayable witnesses, the set-theoretic axiom matrix for the two
// negation operators, and the corner-case table for the NAF encodings.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sparqlneg/rewrite.hpp"

namespace sparqlneg {

struct GraphSpace {
  enum class Mode { Exhaustive, Random, Explicit };

  std::vector<Term> subjects, predicates, objects;
  std::size_t max_triples = 8;  // cap on the triple universe
  Mode mode = Mode::Exhaustive;
  std::uint64_t samples = 0;  // Random
  std::uint64_t seed = 0;     // Random
  std::vector<Graph> explicit_graphs;

  static GraphSpace default_space();  // {:a,:b} x {:p,:q} x {:a,:b}
  static GraphSpace explicit_space(std::vector<Graph> graphs);
  std::vector<Triple> universe() const;  // sorted, deduplicated, validated
};

std::uint64_t space_graph_count(const GraphSpace& space);
// SPARQLNEG_SPACE_BUDGET environment variable, default 65536 graphs
std::uint64_t space_budget();
// visits the space's graphs in canonical order
void for_each_graph(const GraphSpace& space,
                    const std::function<void(const Graph&)>& fn);

enum class Semantics { Bag, Set };

struct EquivalenceReport {
  bool equivalent = true;
  Semantics semantics = Semantics::Bag;
  std::uint64_t graphs_checked = 0;
  // populated only when inequivalent; replaying the two patterns on the
  // witness graph reproduces the differing results
  Graph witness_graph;
  MappingMultiset lhs, rhs;
};

// evaluates both patterns on every graph of the space (as the default graph;
// the reserved probe graph is injected when mentioned); throws
// Error("space-too-large...") when the space exceeds the budget
EquivalenceReport check_equiv(const PatternPtr& p1, const PatternPtr& p2,
                              const GraphSpace& space, Semantics semantics);

enum class NegOp { Diff, Minus };

struct AxiomCase {
  char axiom = 'a';  // 'a'..'l'
  NegOp op = NegOp::Diff;
  Semantics semantics = Semantics::Bag;
  std::vector<std::string> slots;  // fixture names, two or three
  bool holds = true;
  MappingMultiset lhs, rhs;
};

// the five frozen fixtures: empty, omega0 = {mu0:1},
// omega1 = {{?X=:a}:1, {?X=:b}:2}, omega2 = {{?X=:a,?Y=:w}:1},
// omega3 = {{?Z=:c}:1}
std::map<std::string, MappingMultiset> fixture_multisets();
const std::vector<std::string>& fixture_order();
// instantiates the twelve set-theoretic axioms over all fixture combinations:
// 25 cases each for the two-slot axioms (a)-(j), 125 each for (k) and (l)
std::vector<AxiomCase> run_axiom_matrix(NegOp op, Semantics semantics);
// published failure tallies for comparison in reports ("" when none claimed)
std::string published_axiom_note(char axiom, NegOp op);

struct Table2Row {
  int row = 1;          // 1..11
  bool g0_empty = false;
  std::string p1_shape, p2_shape;  // fixture names
  bool populated = false;          // rows 6-11 stay unpopulated when G0 = {}
  MappingMultiset diff, p3, p4;
  bool p3_agrees = true, p4_agrees = true;
};

// realises the eleven corner configurations over concrete graphs and compares
// DIFF against the variable-probe and graph-probe NAF encodings; throws
// Error("unrealizable-row...") when a realisation misses its stipulated shape
std::vector<Table2Row> run_table2();

std::string render_mapping(const Mapping& m);
std::string render_multiset(const MappingMultiset& o);

}  // namespace sparqlneg
