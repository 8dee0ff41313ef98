#include "sparqlneg/formula.hpp"

namespace sparqlneg {

// conjunction: false dominates, then error
TruthValue tv_and(TruthValue a, TruthValue b) {
  if (a == TruthValue::False || b == TruthValue::False) return TruthValue::False;
  if (a == TruthValue::Error || b == TruthValue::Error) return TruthValue::Error;
  return TruthValue::True;
}

// disjunction: true dominates, then error
TruthValue tv_or(TruthValue a, TruthValue b) {
  if (a == TruthValue::True || b == TruthValue::True) return TruthValue::True;
  if (a == TruthValue::Error || b == TruthValue::Error) return TruthValue::Error;
  return TruthValue::False;
}

TruthValue tv_not(TruthValue a) {
  switch (a) {
    case TruthValue::True: return TruthValue::False;
    case TruthValue::False: return TruthValue::True;
    default: return TruthValue::Error;
  }
}

namespace {
std::string check_var(std::string v) {
  if (v.size() < 2 || v[0] != '?')
    throw Error("invalid variable: expected '?name', got '" + v + "'");
  return v;
}
Term check_ground(Term t) {
  if (!t.is_ground())
    throw Error("formula atoms compare against ground terms: " + t.lexical);
  return t;
}
}  // namespace

FormulaPtr f_eq(std::string var, Term t) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::EqVarTerm;
  f->var1 = check_var(std::move(var));
  f->term1 = check_ground(std::move(t));
  return f;
}

FormulaPtr f_eq_vars(std::string v1, std::string v2) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::EqVarVar;
  f->var1 = check_var(std::move(v1));
  f->var2 = check_var(std::move(v2));
  return f;
}

FormulaPtr f_eq_terms(Term t1, Term t2) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::EqTermTerm;
  f->term1 = check_ground(std::move(t1));
  f->term2 = check_ground(std::move(t2));
  return f;
}

FormulaPtr f_bound(std::string var) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Bound;
  f->var1 = check_var(std::move(var));
  return f;
}

FormulaPtr f_true() {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::True;
  return f;
}

FormulaPtr f_false() {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::False;
  return f;
}

FormulaPtr f_not(FormulaPtr inner) {
  if (!inner) throw Error("null formula operand");
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Not;
  f->lhs = std::move(inner);
  return f;
}

FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  if (!a || !b) throw Error("null formula operand");
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::And;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}

FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  if (!a || !b) throw Error("null formula operand");
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Or;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}

bool formula_equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Formula::Kind::EqVarTerm:
      return a.var1 == b.var1 && a.term1 == b.term1;
    case Formula::Kind::EqVarVar:
      return a.var1 == b.var1 && a.var2 == b.var2;
    case Formula::Kind::EqTermTerm:
      return a.term1 == b.term1 && a.term2 == b.term2;
    case Formula::Kind::Bound:
      return a.var1 == b.var1;
    case Formula::Kind::True:
    case Formula::Kind::False:
      return true;
    case Formula::Kind::Not:
      return formula_equal(*a.lhs, *b.lhs);
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return formula_equal(*a.lhs, *b.lhs) && formula_equal(*a.rhs, *b.rhs);
  }
  return false;
}

std::set<std::string> formula_vars(const Formula& f) {
  std::set<std::string> out;
  switch (f.kind) {
    case Formula::Kind::EqVarTerm:
    case Formula::Kind::Bound:
      out.insert(f.var1);
      break;
    case Formula::Kind::EqVarVar:
      out.insert(f.var1);
      out.insert(f.var2);
      break;
    case Formula::Kind::Not: {
      auto sub = formula_vars(*f.lhs);
      out.insert(sub.begin(), sub.end());
      break;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      auto l = formula_vars(*f.lhs);
      auto r = formula_vars(*f.rhs);
      out.insert(l.begin(), l.end());
      out.insert(r.begin(), r.end());
      break;
    }
    default:
      break;
  }
  return out;
}

TruthValue eval_formula(const Formula& f, const Mapping& m) {
  switch (f.kind) {
    case Formula::Kind::EqVarTerm:
      if (!m.bound(f.var1)) return TruthValue::Error;
      return m.at(f.var1) == f.term1 ? TruthValue::True : TruthValue::False;
    case Formula::Kind::EqVarVar:
      if (!m.bound(f.var1) || !m.bound(f.var2)) return TruthValue::Error;
      return m.at(f.var1) == m.at(f.var2) ? TruthValue::True
                                          : TruthValue::False;
    case Formula::Kind::EqTermTerm:
      return f.term1 == f.term2 ? TruthValue::True : TruthValue::False;
    case Formula::Kind::Bound:
      return m.bound(f.var1) ? TruthValue::True : TruthValue::False;
    case Formula::Kind::True:
      return TruthValue::True;
    case Formula::Kind::False:
      return TruthValue::False;
    case Formula::Kind::Not:
      return tv_not(eval_formula(*f.lhs, m));
    case Formula::Kind::And:
      return tv_and(eval_formula(*f.lhs, m), eval_formula(*f.rhs, m));
    case Formula::Kind::Or:
      return tv_or(eval_formula(*f.lhs, m), eval_formula(*f.rhs, m));
  }
  throw Error("unreachable formula kind");
}

FormulaPtr constraint_to_formula(const FilterConstraintPtr& c) {
  if (!c) throw Error("null constraint");
  switch (c->kind) {
    case Formula::Kind::EqVarTerm:
      return f_eq(c->var1, c->term1);
    case Formula::Kind::EqVarVar:
      return f_eq_vars(c->var1, c->var2);
    case Formula::Kind::EqTermTerm:
      return f_eq_terms(c->term1, c->term2);
    case Formula::Kind::Bound:
      return f_bound(c->var1);
    case Formula::Kind::True:
      return f_true();
    case Formula::Kind::False:
      return f_false();
    case Formula::Kind::Not:
      return f_not(constraint_to_formula(c->lhs));
    case Formula::Kind::And:
      return f_and(constraint_to_formula(c->lhs),
                   constraint_to_formula(c->rhs));
    case Formula::Kind::Or:
      return f_or(constraint_to_formula(c->lhs), constraint_to_formula(c->rhs));
  }
  throw Error("unreachable constraint kind");
}

FormulaPtr substitute_formula(const Mapping& m, const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::EqVarTerm:
      if (m.bound(f.var1)) return f_eq_terms(m.at(f.var1), f.term1);
      return f_eq(f.var1, f.term1);
    case Formula::Kind::EqVarVar: {
      bool b1 = m.bound(f.var1), b2 = m.bound(f.var2);
      if (b1 && b2) return f_eq_terms(m.at(f.var1), m.at(f.var2));
      // equality is symmetric: keep the still-open variable on the left
      if (b1) return f_eq(f.var2, m.at(f.var1));
      if (b2) return f_eq(f.var1, m.at(f.var2));
      return f_eq_vars(f.var1, f.var2);
    }
    case Formula::Kind::EqTermTerm:
      return f_eq_terms(f.term1, f.term2);
    case Formula::Kind::Bound:
      // a substituted value is bound by construction
      if (m.bound(f.var1)) return f_true();
      return f_bound(f.var1);
    case Formula::Kind::True:
      return f_true();
    case Formula::Kind::False:
      return f_false();
    case Formula::Kind::Not:
      return f_not(substitute_formula(m, *f.lhs));
    case Formula::Kind::And:
      return f_and(substitute_formula(m, *f.lhs),
                   substitute_formula(m, *f.rhs));
    case Formula::Kind::Or:
      return f_or(substitute_formula(m, *f.lhs), substitute_formula(m, *f.rhs));
  }
  throw Error("unreachable formula kind");
}

FormulaPtr rename_formula_vars(const Formula& f,
                               const std::map<std::string, std::string>& ren) {
  auto renamed = [&ren](const std::string& v) {
    auto it = ren.find(v);
    return it == ren.end() ? v : it->second;
  };
  switch (f.kind) {
    case Formula::Kind::EqVarTerm:
      return f_eq(renamed(f.var1), f.term1);
    case Formula::Kind::EqVarVar:
      return f_eq_vars(renamed(f.var1), renamed(f.var2));
    case Formula::Kind::EqTermTerm:
      return f_eq_terms(f.term1, f.term2);
    case Formula::Kind::Bound:
      return f_bound(renamed(f.var1));
    case Formula::Kind::True:
      return f_true();
    case Formula::Kind::False:
      return f_false();
    case Formula::Kind::Not:
      return f_not(rename_formula_vars(*f.lhs, ren));
    case Formula::Kind::And:
      return f_and(rename_formula_vars(*f.lhs, ren),
                   rename_formula_vars(*f.rhs, ren));
    case Formula::Kind::Or:
      return f_or(rename_formula_vars(*f.lhs, ren),
                  rename_formula_vars(*f.rhs, ren));
  }
  throw Error("unreachable formula kind");
}

}  // namespace sparqlneg
