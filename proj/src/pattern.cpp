#include "sparqlneg/pattern.hpp"

#include <optional>

namespace sparqlneg {

namespace {
PatternPtr node(Pattern p) { return std::make_shared<Pattern>(std::move(p)); }

// pattern positions allow literals in subject and object; predicates are
// iris or variables
void check_triple_positions(const Term& s, const Term& p, const Term& o) {
  (void)s;
  (void)o;
  if (!p.is_iri() && !p.is_variable())
    throw Error("invalid triple pattern: predicate must be an iri or "
                "variable, got '" + p.lexical + "'");
}

// internal builder: substitution may produce ground triples
PatternPtr p_triple_raw(Term s, Term p, Term o) {
  check_triple_positions(s, p, o);
  Pattern pat;
  pat.kind = Pattern::Kind::Triple;
  pat.triple = TriplePattern{std::move(s), std::move(p), std::move(o)};
  return node(std::move(pat));
}
}  // namespace

TriplePattern make_triple_pattern(Term s, Term p, Term o) {
  check_triple_positions(s, p, o);
  if (!s.is_variable() && !p.is_variable() && !o.is_variable())
    throw Error("invalid triple pattern: at least one position must be a "
                "variable");
  return TriplePattern{std::move(s), std::move(p), std::move(o)};
}

PatternPtr p_triple(Term s, Term p, Term o) {
  Pattern pat;
  pat.kind = Pattern::Kind::Triple;
  pat.triple = make_triple_pattern(std::move(s), std::move(p), std::move(o));
  return node(std::move(pat));
}

namespace {
PatternPtr binary(Pattern::Kind k, PatternPtr l, PatternPtr r) {
  if (!l || !r) throw Error("null pattern operand");
  Pattern pat;
  pat.kind = k;
  pat.lhs = std::move(l);
  pat.rhs = std::move(r);
  return node(std::move(pat));
}
}  // namespace

PatternPtr p_and(PatternPtr l, PatternPtr r) {
  return binary(Pattern::Kind::And, std::move(l), std::move(r));
}
PatternPtr p_union(PatternPtr l, PatternPtr r) {
  return binary(Pattern::Kind::Union, std::move(l), std::move(r));
}
PatternPtr p_opt(PatternPtr l, PatternPtr r) {
  return binary(Pattern::Kind::Opt, std::move(l), std::move(r));
}
PatternPtr p_minus(PatternPtr l, PatternPtr r) {
  return binary(Pattern::Kind::Minus, std::move(l), std::move(r));
}
PatternPtr p_not_exists(PatternPtr l, PatternPtr r) {
  return binary(Pattern::Kind::NotExists, std::move(l), std::move(r));
}
PatternPtr p_diff(PatternPtr l, PatternPtr r) {
  return binary(Pattern::Kind::Diff, std::move(l), std::move(r));
}

PatternPtr p_filter(PatternPtr p, FormulaPtr c) {
  if (!p || !c) throw Error("null pattern operand");
  Pattern pat;
  pat.kind = Pattern::Kind::Filter;
  pat.lhs = std::move(p);
  pat.constraint = std::move(c);
  return node(std::move(pat));
}

PatternPtr p_graph(Term name, PatternPtr p) {
  if (!p) throw Error("null pattern operand");
  if (!name.is_iri() && !name.is_variable())
    throw Error("invalid graph name: expected iri or variable, got '" +
                name.lexical + "'");
  Pattern pat;
  pat.kind = Pattern::Kind::Graph;
  pat.graph_name = std::move(name);
  pat.lhs = std::move(p);
  return node(std::move(pat));
}

PatternPtr p_unit() {
  Pattern pat;
  pat.kind = Pattern::Kind::Unit;
  return node(std::move(pat));
}

bool pattern_equal(const Pattern& a, const Pattern& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Pattern::Kind::Triple:
      return a.triple == b.triple;
    case Pattern::Kind::Unit:
      return true;
    case Pattern::Kind::Filter:
      return pattern_equal(*a.lhs, *b.lhs) &&
             formula_equal(*a.constraint, *b.constraint);
    case Pattern::Kind::Graph:
      return a.graph_name == b.graph_name && pattern_equal(*a.lhs, *b.lhs);
    default:
      return pattern_equal(*a.lhs, *b.lhs) && pattern_equal(*a.rhs, *b.rhs);
  }
}

std::set<std::string> var_set(const Pattern& p) {
  std::set<std::string> out;
  switch (p.kind) {
    case Pattern::Kind::Triple:
      for (const Term* t : {&p.triple.s, &p.triple.p, &p.triple.o})
        if (t->is_variable()) out.insert(t->lexical);
      break;
    case Pattern::Kind::Unit:
      break;
    case Pattern::Kind::Filter: {
      out = var_set(*p.lhs);
      auto fv = formula_vars(*p.constraint);
      out.insert(fv.begin(), fv.end());
      break;
    }
    case Pattern::Kind::Graph:
      out = var_set(*p.lhs);
      if (p.graph_name.is_variable()) out.insert(p.graph_name.lexical);
      break;
    default: {
      out = var_set(*p.lhs);
      auto r = var_set(*p.rhs);
      out.insert(r.begin(), r.end());
      break;
    }
  }
  return out;
}

std::set<std::string> safe_vars(const Pattern& p) {
  switch (p.kind) {
    case Pattern::Kind::Triple: {
      std::set<std::string> out;
      for (const Term* t : {&p.triple.s, &p.triple.p, &p.triple.o})
        if (t->is_variable()) out.insert(t->lexical);
      return out;
    }
    case Pattern::Kind::Unit:
      return {};
    case Pattern::Kind::And: {
      auto out = safe_vars(*p.lhs);
      auto r = safe_vars(*p.rhs);
      out.insert(r.begin(), r.end());
      return out;
    }
    case Pattern::Kind::Union:
    case Pattern::Kind::Opt: {
      auto l = safe_vars(*p.lhs);
      auto r = safe_vars(*p.rhs);
      std::set<std::string> out;
      for (const auto& v : l)
        if (r.count(v)) out.insert(v);
      return out;
    }
    case Pattern::Kind::Filter:
    case Pattern::Kind::Minus:
    case Pattern::Kind::NotExists:
    case Pattern::Kind::Diff:
      return safe_vars(*p.lhs);
    case Pattern::Kind::Graph: {
      auto out = safe_vars(*p.lhs);
      if (p.graph_name.is_variable()) out.insert(p.graph_name.lexical);
      return out;
    }
  }
  throw Error("unreachable pattern kind");
}

namespace {
void fragment_walk(const Pattern& p, const std::string& path,
                   std::vector<FragmentViolation>& out) {
  if (p.kind == Pattern::Kind::NotExists) {
    auto lv = var_set(*p.lhs);
    auto rv = var_set(*p.rhs);
    auto sv = safe_vars(*p.rhs);
    for (const auto& v : lv)
      if (rv.count(v) && !sv.count(v))
        out.push_back(FragmentViolation{v, path.empty() ? "/" : path});
  }
  switch (p.kind) {
    case Pattern::Kind::Triple:
    case Pattern::Kind::Unit:
      return;
    case Pattern::Kind::Filter:
    case Pattern::Kind::Graph:
      fragment_walk(*p.lhs, path + "/left", out);
      return;
    default:
      fragment_walk(*p.lhs, path + "/left", out);
      fragment_walk(*p.rhs, path + "/right", out);
      return;
  }
}
}  // namespace

FragmentReport in_fragment_ex(const Pattern& p) {
  FragmentReport report;
  fragment_walk(p, "", report.violations);
  report.in_fragment = report.violations.empty();
  return report;
}

PatternPtr substitute(const Mapping& m, const Pattern& p) {
  auto subst_term = [&m](const Term& t) {
    if (t.is_variable() && m.bound(t.lexical)) return m.at(t.lexical);
    return t;
  };
  switch (p.kind) {
    case Pattern::Kind::Triple:
      return p_triple_raw(subst_term(p.triple.s), subst_term(p.triple.p),
                          subst_term(p.triple.o));
    case Pattern::Kind::Unit:
      return p_unit();
    case Pattern::Kind::Filter:
      return p_filter(substitute(m, *p.lhs),
                      substitute_formula(m, *p.constraint));
    case Pattern::Kind::Graph:
      return p_graph(subst_term(p.graph_name), substitute(m, *p.lhs));
    case Pattern::Kind::And:
      return p_and(substitute(m, *p.lhs), substitute(m, *p.rhs));
    case Pattern::Kind::Union:
      return p_union(substitute(m, *p.lhs), substitute(m, *p.rhs));
    case Pattern::Kind::Opt:
      return p_opt(substitute(m, *p.lhs), substitute(m, *p.rhs));
    case Pattern::Kind::Minus:
      return p_minus(substitute(m, *p.lhs), substitute(m, *p.rhs));
    case Pattern::Kind::NotExists:
      return p_not_exists(substitute(m, *p.lhs), substitute(m, *p.rhs));
    case Pattern::Kind::Diff:
      return p_diff(substitute(m, *p.lhs), substitute(m, *p.rhs));
  }
  throw Error("unreachable pattern kind");
}

EvalContext EvalContext::for_graph(Graph g) {
  EvalContext ctx;
  ctx.dataset.default_graph = std::move(g);
  return ctx;
}

EvalContext EvalContext::for_dataset(Dataset d) {
  EvalContext ctx;
  ctx.dataset = std::move(d);
  return ctx;
}

namespace {

std::optional<Mapping> match_triple(const TriplePattern& tp, const Triple& t) {
  Mapping m;
  auto bind = [&m](const Term& pat, const Term& actual) {
    if (pat.is_variable()) {
      auto it = m.bindings.find(pat.lexical);
      if (it != m.bindings.end()) return it->second == actual;
      m.bindings.emplace(pat.lexical, actual);
      return true;
    }
    return pat == actual;
  };
  if (!bind(tp.s, t.s)) return std::nullopt;
  if (!bind(tp.p, t.p)) return std::nullopt;
  if (!bind(tp.o, t.o)) return std::nullopt;
  return m;
}

MappingMultiset eval_rec(const Pattern& p, const EvalContext& ctx,
                         const Graph& active, int depth) {
  if (depth > ctx.depth_limit)
    throw Error("pattern evaluation depth limit exceeded");
  switch (p.kind) {
    case Pattern::Kind::Triple: {
      MappingMultiset out;
      for (const Triple& t : active.triples)
        if (auto m = match_triple(p.triple, t)) out.add(*m, 1);
      return out;
    }
    case Pattern::Kind::And:
      return join(eval_rec(*p.lhs, ctx, active, depth + 1),
                  eval_rec(*p.rhs, ctx, active, depth + 1));
    case Pattern::Kind::Union:
      return bag_union(eval_rec(*p.lhs, ctx, active, depth + 1),
                       eval_rec(*p.rhs, ctx, active, depth + 1));
    case Pattern::Kind::Opt: {
      // syntactic case split on the (unrewritten) right arm
      MappingMultiset left = eval_rec(*p.lhs, ctx, active, depth + 1);
      if (p.rhs->kind == Pattern::Kind::Filter) {
        MappingMultiset right = eval_rec(*p.rhs->lhs, ctx, active, depth + 1);
        return leftjoin(left, right, *p.rhs->constraint, ctx.error_as_false);
      }
      MappingMultiset right = eval_rec(*p.rhs, ctx, active, depth + 1);
      return leftjoin(left, right, *f_true(), ctx.error_as_false);
    }
    case Pattern::Kind::Minus:
      return minus(eval_rec(*p.lhs, ctx, active, depth + 1),
                   eval_rec(*p.rhs, ctx, active, depth + 1));
    case Pattern::Kind::NotExists: {
      MappingMultiset left = eval_rec(*p.lhs, ctx, active, depth + 1);
      MappingMultiset out;
      for (const auto& [m, c] : left.entries()) {
        PatternPtr inst = substitute(m, *p.rhs);
        if (eval_rec(*inst, ctx, active, depth + 1).empty()) out.add(m, c);
      }
      return out;
    }
    case Pattern::Kind::Diff:
      return sdiff(eval_rec(*p.lhs, ctx, active, depth + 1),
                   eval_rec(*p.rhs, ctx, active, depth + 1));
    case Pattern::Kind::Filter:
      return select(eval_rec(*p.lhs, ctx, active, depth + 1), *p.constraint);
    case Pattern::Kind::Graph: {
      if (p.graph_name.is_variable()) {
        // union over the named graphs, tagging the name variable
        MappingMultiset out;
        for (const auto& [name, g] : ctx.dataset.named) {
          MappingMultiset sub = eval_rec(*p.lhs, ctx, g, depth + 1);
          MappingMultiset tag;
          tag.add(make_mapping({{p.graph_name.lexical, name}}), 1);
          out = bag_union(out, join(sub, tag));
        }
        return out;
      }
      if (!dataset_has(ctx.dataset, p.graph_name)) return MappingMultiset{};
      return eval_rec(*p.lhs, ctx, dataset_lookup(ctx.dataset, p.graph_name),
                      depth + 1);
    }
    case Pattern::Kind::Unit:
      return omega0();
  }
  throw Error("unreachable pattern kind");
}

}  // namespace

MappingMultiset eval_pattern(const Pattern& p, const EvalContext& ctx) {
  return eval_rec(p, ctx, ctx.dataset.default_graph, 0);
}

MappingMultiset eval_set_semantics(const Pattern& p, const EvalContext& ctx) {
  return eval_pattern(p, ctx).collapsed();
}

}  // namespace sparqlneg
