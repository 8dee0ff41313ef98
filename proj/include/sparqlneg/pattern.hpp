#pragma once
// Graph pattern ASTs and their multiset evaluation over a dataset. The
// pattern language covers triple patterns, AND, UNION, OPT, MINUS,
// NOT-EXISTS, DIFF, FILTER, GRAPH and the unit pattern. OPT is evaluated via
// a syntactic case split on its unrewritten right arm: a filter arm supplies
// the left-join condition, any other arm left-joins under the constant true.

#include <memory>
#include <vector>

#include "sparqlneg/algebra.hpp"

namespace sparqlneg {

struct TriplePattern {
  Term s, p, o;
  auto operator<=>(const TriplePattern&) const = default;
};

// validates positions (predicate iri or variable, subject/object also allow
// literals) and requires at least one variable
TriplePattern make_triple_pattern(Term s, Term p, Term o);

struct Pattern;
using PatternPtr = std::shared_ptr<const Pattern>;

struct Pattern {
  enum class Kind {
    Triple,
    And,
    Union,
    Opt,
    Minus,
    NotExists,
    Diff,
    Filter,
    Graph,
    Unit
  };

  Kind kind = Kind::Unit;
  TriplePattern triple;    // Triple
  PatternPtr lhs, rhs;     // binary nodes; Filter and Graph use lhs only
  FormulaPtr constraint;   // Filter
  Term graph_name;         // Graph: iri or variable
};

PatternPtr p_triple(Term s, Term p, Term o);
PatternPtr p_and(PatternPtr l, PatternPtr r);
PatternPtr p_union(PatternPtr l, PatternPtr r);
PatternPtr p_opt(PatternPtr l, PatternPtr r);
PatternPtr p_minus(PatternPtr l, PatternPtr r);
PatternPtr p_not_exists(PatternPtr l, PatternPtr r);
PatternPtr p_diff(PatternPtr l, PatternPtr r);
PatternPtr p_filter(PatternPtr p, FormulaPtr c);
PatternPtr p_graph(Term name, PatternPtr p);
PatternPtr p_unit();

bool pattern_equal(const Pattern& a, const Pattern& b);

// every variable occurring anywhere in the pattern (triples, constraints,
// GRAPH names)
std::set<std::string> var_set(const Pattern& p);

// variables guaranteed to be bound in every solution: triple patterns yield
// their variables, AND unites, UNION and OPT intersect, FILTER / MINUS /
// NOT-EXISTS / DIFF take the left arm, GRAPH adds its variable name, the
// unit pattern yields nothing
std::set<std::string> safe_vars(const Pattern& p);

struct FragmentViolation {
  std::string variable;
  std::string path;  // slash path from the root, e.g. "/right/left"
};
struct FragmentReport {
  bool in_fragment = true;
  std::vector<FragmentViolation> violations;
};
// membership in the fragment where every NOT-EXISTS right arm keeps its
// correlated variables safe
FragmentReport in_fragment_ex(const Pattern& p);

// applies a mapping to a pattern: triple positions, filter constraints and
// GRAPH variables are replaced; substituted triples may become ground
PatternPtr substitute(const Mapping& m, const Pattern& p);

struct EvalContext {
  Dataset dataset;
  bool error_as_false = true;
  int depth_limit = 64;

  static EvalContext for_graph(Graph g);
  static EvalContext for_dataset(Dataset d);
};

// evaluates p with the dataset's default graph active; throws Error when the
// recursion depth limit is exceeded
MappingMultiset eval_pattern(const Pattern& p, const EvalContext& ctx);
// same evaluation with every result cardinality collapsed to 1
MappingMultiset eval_set_semantics(const Pattern& p, const EvalContext& ctx);

}  // namespace sparqlneg
