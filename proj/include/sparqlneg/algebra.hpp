#pragma once
// Multiset algebra over solution mappings: the full operator set (projection,
// selection, join, union, filtered difference, minus, left outer join, strict
// set difference) plus a small expression language for composing them over
// named inputs. The core fragment is {project, select, join, union, sdiff};
// rename is an input-relabelling adapter required to express the minus
// elimination.

#include <memory>

#include "sparqlneg/formula.hpp"

namespace sparqlneg {

MappingMultiset project(const MappingMultiset& o, const std::set<std::string>& w);
// keeps mappings on which f evaluates to true; cardinalities preserved
MappingMultiset select(const MappingMultiset& o, const Formula& f);
// cardinality of a merge is the sum of products over its decompositions
MappingMultiset join(const MappingMultiset& o1, const MappingMultiset& o2);
// filtered difference: keeps m1 when every m2 is incompatible or makes f
// false on the merge; with error_as_false an error counts as false
MappingMultiset diff(const MappingMultiset& o1, const MappingMultiset& o2,
                     const Formula& f, bool error_as_false = true);
MappingMultiset bag_union(const MappingMultiset& o1, const MappingMultiset& o2);
// keeps m1 when every m2 is incompatible or domain-disjoint with it
MappingMultiset minus(const MappingMultiset& o1, const MappingMultiset& o2);
// strict difference: keeps m1 when every m2 is incompatible with it
MappingMultiset sdiff(const MappingMultiset& o1, const MappingMultiset& o2);
MappingMultiset leftjoin(const MappingMultiset& o1, const MappingMultiset& o2,
                         const Formula& f, bool error_as_false = true);
// consistent variable renaming; throws on binding collisions
MappingMultiset rename_vars(const MappingMultiset& o,
                            const std::map<std::string, std::string>& ren);

struct AlgebraExpr;
using AlgebraPtr = std::shared_ptr<const AlgebraExpr>;

struct AlgebraExpr {
  enum class Kind {
    Leaf,      // named input with a declared variable schema
    Project,
    Select,
    Join,
    Diff,
    Union,
    Minus,
    LeftJoin,
    SDiff,
    Rename
  };

  Kind kind = Kind::Leaf;
  std::string leaf_name;
  std::set<std::string> schema;  // Leaf: declared variables of the input
  std::set<std::string> vars;    // Project: kept variables
  FormulaPtr formula;            // Select / Diff / LeftJoin
  std::map<std::string, std::string> renaming;  // Rename
  AlgebraPtr lhs, rhs;
};

AlgebraPtr a_leaf(std::string name, std::set<std::string> schema);
AlgebraPtr a_project(AlgebraPtr e, std::set<std::string> vars);
AlgebraPtr a_select(AlgebraPtr e, FormulaPtr f);
AlgebraPtr a_join(AlgebraPtr l, AlgebraPtr r);
AlgebraPtr a_diff(AlgebraPtr l, AlgebraPtr r, FormulaPtr f);
AlgebraPtr a_union(AlgebraPtr l, AlgebraPtr r);
AlgebraPtr a_minus(AlgebraPtr l, AlgebraPtr r);
AlgebraPtr a_leftjoin(AlgebraPtr l, AlgebraPtr r, FormulaPtr f);
AlgebraPtr a_sdiff(AlgebraPtr l, AlgebraPtr r);
AlgebraPtr a_rename(AlgebraPtr e, std::map<std::string, std::string> ren);

// static upper bound on the variables an expression can bind, derived from
// the leaf schemas
std::set<std::string> algebra_schema(const AlgebraExpr& e);
// true when the expression contains no diff, minus or leftjoin node
bool algebra_is_core(const AlgebraExpr& e);

using AlgebraEnv = std::map<std::string, MappingMultiset>;
// evaluates e over the named inputs; throws Error("unbound-input-name: ...")
MappingMultiset eval_algebra(const AlgebraExpr& e, const AlgebraEnv& env,
                             bool error_as_false = true);

}  // namespace sparqlneg
