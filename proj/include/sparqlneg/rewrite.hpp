#pragma once
// Rewriters that eliminate the negation-flavoured operators in favour of
// DIFF / strict difference, the algebra-to-core transformation, and the three
// negation-as-failure encodings. Fresh variables use a reserved prefix that
// the user-facing parser rejects, so they can never collide with input
// patterns.

#include <vector>

#include "sparqlneg/pattern.hpp"

namespace sparqlneg {

inline constexpr const char* kReservedVarPrefix = "?__";

// reserved probe graph for the graph-based NAF encoding
Term naf_graph_name();   // :__naf
Graph naf_graph();       // { (:s, :p, :o) }

enum class Applicability { Applied, Inapplicable, Rejected };

struct RewriteResult {
  PatternPtr output;  // input unchanged when inapplicable; null when rejected
  std::string rule;
  std::vector<std::string> fresh_vars;
  Applicability applicability = Applicability::Inapplicable;
  std::string reason;  // set when rejected
};

// rewrites every OPT node bottom-up; the case split (filter arm vs plain arm)
// is decided on the unrewritten right arm
RewriteResult rewrite_opt_to_diff(const PatternPtr& p);
// rewrites every MINUS node bottom-up: disjoint variable sets drop the right
// arm, shared variables go through the rename-and-compare construction
RewriteResult rewrite_minus_to_diff(const PatternPtr& p);
// rewrites every NOT-EXISTS node to DIFF when its correlated variables are
// safe in the right arm; otherwise rejected-with-reason naming the variables
RewriteResult rewrite_nex_to_diff(const PatternPtr& p);
// full normalisation: OPT, then MINUS, then NOT-EXISTS
RewriteResult normalize_to_diff(const PatternPtr& p);

// true when the pattern uses only triple/AND/UNION/DIFF/FILTER/unit nodes
bool in_sparql_diff(const Pattern& p);

// eliminates diff, leftjoin and minus from an algebra expression; the flag
// selects the errata construction (errors count as false) or the faithful
// one for diff
AlgebraPtr rewrite_algebra_to_core(const AlgebraPtr& e,
                                   bool error_as_false = true);

enum class NafScheme { Naive, Perez, Polleres, PolleresAsPrinted };
// encodes "p1 and not p2" through optional matching plus an unbound check;
// naive picks the lexicographically least variable of p2 absent from p1 and
// is rejected when no such witness exists
RewriteResult encode_naf(const PatternPtr& p1, const PatternPtr& p2,
                         NafScheme scheme);

bool mentions_naf_graph(const Pattern& p);
// rejects datasets that define the reserved graph, and injects it when the
// pattern mentions it
Dataset with_reserved_graphs(const Pattern& p, Dataset d);

// fresh-variable bookkeeping (exposed for tests)
std::string fresh_var_name(int counter);        // "?__vN"
int max_reserved_counter(const Pattern& p);     // 0 when none present

}  // namespace sparqlneg
