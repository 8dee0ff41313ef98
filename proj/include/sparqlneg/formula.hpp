#pragma once
// Three-valued selection formulas over solution mappings. The third value
// (error) arises from equality atoms mentioning unbound variables; bound()
// and the constant atoms never raise it. Filter constraints share this
// representation, so the constraint-to-formula translation is a structural
// copy.

#include <memory>

#include "sparqlneg/solution.hpp"

namespace sparqlneg {

enum class TruthValue { True, False, Error };

TruthValue tv_and(TruthValue a, TruthValue b);
TruthValue tv_or(TruthValue a, TruthValue b);
TruthValue tv_not(TruthValue a);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind {
    EqVarTerm,   // (= ?X :a)
    EqVarVar,    // (= ?X ?Y)
    EqTermTerm,  // (= :a :b), produced by substitution
    Bound,       // (bound ?X)
    True,
    False,
    Not,
    And,
    Or
  };

  Kind kind = Kind::True;
  std::string var1, var2;  // atoms
  Term term1, term2;       // atoms
  FormulaPtr lhs, rhs;     // connectives; Not uses lhs only
};

FormulaPtr f_eq(std::string var, Term t);  // t must be ground
FormulaPtr f_eq_vars(std::string v1, std::string v2);
FormulaPtr f_eq_terms(Term t1, Term t2);  // both ground
FormulaPtr f_bound(std::string var);
FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);

bool formula_equal(const Formula& a, const Formula& b);
std::set<std::string> formula_vars(const Formula& f);

TruthValue eval_formula(const Formula& f, const Mapping& m);

// filter constraints are represented by the same AST; the translation is a
// deep structural copy mapping !, && and || onto not, and, or
using FilterConstraint = Formula;
using FilterConstraintPtr = FormulaPtr;
FormulaPtr constraint_to_formula(const FilterConstraintPtr& c);

// applies a mapping to a formula: bound variables are replaced by their
// values (equalities normalise towards var-on-the-left; a satisfied bound()
// atom becomes the true constant)
FormulaPtr substitute_formula(const Mapping& m, const Formula& f);

// consistent variable renaming (used by the rewriters)
FormulaPtr rename_formula_vars(const Formula& f,
                               const std::map<std::string, std::string>& ren);

}  // namespace sparqlneg
