#pragma once
// Ground RDF vocabulary: terms, triples, graphs and datasets with named graphs.
// Terms keep their written form so the three lexical spaces (iris, literals,
// variables) can never collide: iris are ":name" or "<absolute>", literals are
// the raw string value, variables carry the "?" marker.

#include <compare>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace sparqlneg {

// engine-level failure (parse errors carry positions, see text.hpp)
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class TermKind { Iri, Literal, Variable };

struct Term {
  TermKind kind = TermKind::Iri;
  std::string lexical;

  auto operator<=>(const Term&) const = default;

  bool is_iri() const { return kind == TermKind::Iri; }
  bool is_literal() const { return kind == TermKind::Literal; }
  bool is_variable() const { return kind == TermKind::Variable; }
  bool is_ground() const { return kind != TermKind::Variable; }
};

// factories with lexical-space validation
Term iri(std::string lexical);
Term literal(std::string value);
Term variable(std::string name);  // name must start with '?'

struct Triple {
  Term s, p, o;
  auto operator<=>(const Triple&) const = default;
};

// validates positions: subject/predicate iris, object iri or literal
Triple make_triple(Term s, Term p, Term o);

struct Graph {
  std::set<Triple> triples;

  bool operator==(const Graph&) const = default;
  bool contains(const Triple& t) const { return triples.count(t) > 0; }
  bool empty() const { return triples.empty(); }
  std::size_t size() const { return triples.size(); }
  void add(Triple t) { triples.insert(std::move(t)); }
};

Graph graph_union(const Graph& g1, const Graph& g2);

struct Dataset {
  Graph default_graph;
  std::map<Term, Graph> named;  // keys are iri terms, pairwise distinct
};

bool dataset_has(const Dataset& d, const Term& name);
// returns gr(name); throws Error("unknown-graph-name: ...") when absent
const Graph& dataset_lookup(const Dataset& d, const Term& name);

}  // namespace sparqlneg
