#pragma once
// Surface syntax: line-oriented graph and dataset files, s-expression pattern
// and formula files, canonical printers, and the canonical JSON rendering of
// solution multisets. Parsers reject blank nodes, variables in ground graphs,
// zero-variable triple patterns and (by default) the reserved fresh-variable
// prefix, reporting positions.

#include <string>

#include "sparqlneg/lab.hpp"

namespace sparqlneg {

struct ParseDiagnostic {
  int line = 0;    // 1-based
  int column = 0;  // 1-based
  std::string message;
  std::string snippet;
};

struct ParseError : Error {
  ParseDiagnostic diagnostic;
  explicit ParseError(ParseDiagnostic d);
};

struct ParseOptions {
  // rewriter outputs carry reserved-prefix variables; round-tripping them
  // requires opting in, user-facing parses keep the rejection
  bool allow_reserved_vars = false;
};

// one triple per line: "<s> <p> <o> ."; '#' starts a comment
Graph parse_graph(const std::string& text);
// optional "DEFAULT { ... }" block followed by "GRAPH :name { ... }" blocks
Dataset parse_dataset(const std::string& text);
PatternPtr parse_pattern(const std::string& text, const ParseOptions& opts = {});
FormulaPtr parse_formula(const std::string& text, const ParseOptions& opts = {});

std::string print_term(const Term& t);
std::string print_formula(const Formula& f);
std::string print_pattern(const Pattern& p);
std::string print_graph(const Graph& g);

// {"solutions": [{"bindings": {...}, "card": n}, ...]} with entries in
// canonical mapping order and term tokens as binding values
std::string solutions_to_json(const MappingMultiset& o);

}  // namespace sparqlneg
