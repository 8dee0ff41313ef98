#include "doctest.h"
#include "sparqlneg/formula.hpp"

using namespace sparqlneg;

namespace {
constexpr TruthValue T = TruthValue::True;
constexpr TruthValue F = TruthValue::False;
constexpr TruthValue E = TruthValue::Error;
}  // namespace

TEST_CASE("three-valued conjunction truth table") {
  CHECK(tv_and(T, T) == T);
  CHECK(tv_and(T, F) == F);
  CHECK(tv_and(T, E) == E);
  CHECK(tv_and(F, T) == F);
  CHECK(tv_and(F, F) == F);
  CHECK(tv_and(F, E) == F);
  CHECK(tv_and(E, T) == E);
  CHECK(tv_and(E, F) == F);
  CHECK(tv_and(E, E) == E);
}

TEST_CASE("three-valued disjunction truth table") {
  CHECK(tv_or(T, T) == T);
  CHECK(tv_or(T, F) == T);
  CHECK(tv_or(T, E) == T);
  CHECK(tv_or(F, T) == T);
  CHECK(tv_or(F, F) == F);
  CHECK(tv_or(F, E) == E);
  CHECK(tv_or(E, T) == T);
  CHECK(tv_or(E, F) == E);
  CHECK(tv_or(E, E) == E);
}

TEST_CASE("three-valued negation truth table") {
  CHECK(tv_not(T) == F);
  CHECK(tv_not(F) == T);
  CHECK(tv_not(E) == E);
}

TEST_CASE("equality atoms raise errors on unbound variables") {
  Mapping xa = make_mapping({{"?X", iri(":a")}});

  CHECK(eval_formula(*f_eq("?X", iri(":a")), xa) == T);
  CHECK(eval_formula(*f_eq("?X", iri(":b")), xa) == F);
  CHECK(eval_formula(*f_eq("?Y", iri(":a")), xa) == E);

  Mapping xaya = make_mapping({{"?X", iri(":a")}, {"?Y", iri(":a")}});
  Mapping xayb = make_mapping({{"?X", iri(":a")}, {"?Y", iri(":b")}});
  FormulaPtr xy = f_eq_vars("?X", "?Y");
  CHECK(eval_formula(*xy, xaya) == T);
  CHECK(eval_formula(*xy, xayb) == F);
  CHECK(eval_formula(*xy, xa) == E);         // ?Y unbound
  CHECK(eval_formula(*xy, mu0()) == E);      // both unbound
}

TEST_CASE("ground equality and bound never raise errors") {
  CHECK(eval_formula(*f_eq_terms(iri(":a"), iri(":a")), mu0()) == T);
  CHECK(eval_formula(*f_eq_terms(iri(":a"), literal("a")), mu0()) == F);

  Mapping xa = make_mapping({{"?X", iri(":a")}});
  CHECK(eval_formula(*f_bound("?X"), xa) == T);
  CHECK(eval_formula(*f_bound("?Y"), xa) == F);
  CHECK(eval_formula(*f_true(), mu0()) == T);
  CHECK(eval_formula(*f_false(), mu0()) == F);
}

TEST_CASE("connectives propagate the three values") {
  Mapping xa = make_mapping({{"?X", iri(":a")}});
  FormulaPtr err = f_eq("?Y", iri(":a"));  // error under xa

  CHECK(eval_formula(*f_not(err), xa) == E);
  CHECK(eval_formula(*f_and(f_false(), err), xa) == F);
  CHECK(eval_formula(*f_and(f_true(), err), xa) == E);
  CHECK(eval_formula(*f_or(f_true(), err), xa) == T);
  CHECK(eval_formula(*f_or(f_false(), err), xa) == E);
  // the classic NAF filter: (not (bound ?Y))
  CHECK(eval_formula(*f_not(f_bound("?Y")), xa) == T);
  CHECK(eval_formula(*f_not(f_bound("?X")), xa) == F);
}

TEST_CASE("builders validate their arguments") {
  CHECK_THROWS_AS(f_eq("X", iri(":a")), Error);
  CHECK_THROWS_AS(f_eq("?X", variable("?Y")), Error);
  CHECK_THROWS_AS(f_eq_terms(variable("?X"), iri(":a")), Error);
  CHECK_THROWS_AS(f_bound("X"), Error);
}

TEST_CASE("formula_vars and formula_equal") {
  FormulaPtr f =
      f_and(f_eq("?X", iri(":a")), f_or(f_bound("?Y"), f_eq_vars("?Y", "?Z")));
  CHECK(formula_vars(*f) == std::set<std::string>{"?X", "?Y", "?Z"});
  CHECK(formula_equal(*f, *f));
  CHECK_FALSE(formula_equal(*f, *f_true()));
  CHECK_FALSE(
      formula_equal(*f_eq("?X", iri(":a")), *f_eq("?X", iri(":b"))));

  // constraint translation is a structural copy
  CHECK(formula_equal(*constraint_to_formula(f), *f));
}

TEST_CASE("substitution replaces bound variables") {
  Mapping m = make_mapping({{"?X", iri(":a")}});

  FormulaPtr eq = substitute_formula(m, *f_eq("?X", iri(":a")));
  CHECK(eq->kind == Formula::Kind::EqTermTerm);
  CHECK(eval_formula(*eq, mu0()) == TruthValue::True);

  // an equality between a substituted and an open variable keeps the open
  // variable on the left
  FormulaPtr half = substitute_formula(m, *f_eq_vars("?X", "?Y"));
  CHECK(half->kind == Formula::Kind::EqVarTerm);
  CHECK(half->var1 == "?Y");
  CHECK(half->term1 == iri(":a"));

  // a satisfied bound() atom becomes the true constant
  FormulaPtr b = substitute_formula(m, *f_bound("?X"));
  CHECK(b->kind == Formula::Kind::True);
  FormulaPtr open_b = substitute_formula(m, *f_bound("?Y"));
  CHECK(open_b->kind == Formula::Kind::Bound);
}

TEST_CASE("renaming variables is consistent") {
  FormulaPtr f = f_and(f_eq_vars("?X", "?Y"), f_bound("?X"));
  FormulaPtr r = rename_formula_vars(*f, {{"?X", "?A"}});
  CHECK(formula_vars(*r) == std::set<std::string>{"?A", "?Y"});
  CHECK(formula_equal(*r, *f_and(f_eq_vars("?A", "?Y"), f_bound("?A"))));
}
