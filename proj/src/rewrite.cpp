#include "sparqlneg/rewrite.hpp"

#include <algorithm>
#include <functional>

namespace sparqlneg {

Term naf_graph_name() { return iri(":__naf"); }

Graph naf_graph() {
  Graph g;
  g.add(make_triple(iri(":s"), iri(":p"), iri(":o")));
  return g;
}

std::string fresh_var_name(int counter) {
  return std::string(kReservedVarPrefix) + "v" + std::to_string(counter);
}

namespace {

int reserved_counter_of(const std::string& name) {
  const std::string prefix = std::string(kReservedVarPrefix) + "v";
  if (name.rfind(prefix, 0) != 0) return 0;
  const std::string digits = name.substr(prefix.size());
  if (digits.empty()) return 0;
  for (char ch : digits)
    if (ch < '0' || ch > '9') return 0;
  try {
    return std::stoi(digits);
  } catch (const std::exception&) {
    return 0;
  }
}

// allocates names guaranteed absent from the scanned patterns
struct FreshGen {
  int next = 1;
  std::vector<std::string> made;

  void scan(const Pattern& p) {
    for (const auto& v : var_set(p))
      next = std::max(next, reserved_counter_of(v) + 1);
  }
  std::string make() {
    std::string name = fresh_var_name(next++);
    made.push_back(name);
    return name;
  }
};

PatternPtr rename_pattern_vars(const Pattern& p,
                               const std::map<std::string, std::string>& ren) {
  auto ren_term = [&ren](const Term& t) {
    if (!t.is_variable()) return t;
    auto it = ren.find(t.lexical);
    return it == ren.end() ? t : variable(it->second);
  };
  switch (p.kind) {
    case Pattern::Kind::Triple:
      return p_triple(ren_term(p.triple.s), ren_term(p.triple.p),
                      ren_term(p.triple.o));
    case Pattern::Kind::Unit:
      return p_unit();
    case Pattern::Kind::Filter:
      return p_filter(rename_pattern_vars(*p.lhs, ren),
                      rename_formula_vars(*p.constraint, ren));
    case Pattern::Kind::Graph:
      return p_graph(ren_term(p.graph_name), rename_pattern_vars(*p.lhs, ren));
    case Pattern::Kind::And:
      return p_and(rename_pattern_vars(*p.lhs, ren),
                   rename_pattern_vars(*p.rhs, ren));
    case Pattern::Kind::Union:
      return p_union(rename_pattern_vars(*p.lhs, ren),
                     rename_pattern_vars(*p.rhs, ren));
    case Pattern::Kind::Opt:
      return p_opt(rename_pattern_vars(*p.lhs, ren),
                   rename_pattern_vars(*p.rhs, ren));
    case Pattern::Kind::Minus:
      return p_minus(rename_pattern_vars(*p.lhs, ren),
                     rename_pattern_vars(*p.rhs, ren));
    case Pattern::Kind::NotExists:
      return p_not_exists(rename_pattern_vars(*p.lhs, ren),
                          rename_pattern_vars(*p.rhs, ren));
    case Pattern::Kind::Diff:
      return p_diff(rename_pattern_vars(*p.lhs, ren),
                    rename_pattern_vars(*p.rhs, ren));
  }
  throw Error("unreachable pattern kind");
}

struct WalkResult {
  PatternPtr out;
  bool changed = false;
};

template <typename Fn>
WalkResult walk_bottom_up(const PatternPtr& p, Fn&& at_node);

// rebuilds children bottom-up, then lets at_node transform the rebuilt node;
// at_node receives the node with already-rewritten children plus the original
template <typename Fn>
WalkResult walk_bottom_up(const PatternPtr& p, Fn&& at_node) {
  WalkResult res;
  switch (p->kind) {
    case Pattern::Kind::Triple:
    case Pattern::Kind::Unit:
      res.out = p;
      break;
    case Pattern::Kind::Filter: {
      auto sub = walk_bottom_up(p->lhs, at_node);
      res.changed = sub.changed;
      res.out = sub.changed ? p_filter(sub.out, p->constraint) : p;
      break;
    }
    case Pattern::Kind::Graph: {
      auto sub = walk_bottom_up(p->lhs, at_node);
      res.changed = sub.changed;
      res.out = sub.changed ? p_graph(p->graph_name, sub.out) : p;
      break;
    }
    default: {
      auto l = walk_bottom_up(p->lhs, at_node);
      auto r = walk_bottom_up(p->rhs, at_node);
      res.changed = l.changed || r.changed;
      if (res.changed) {
        Pattern rebuilt = *p;
        rebuilt.lhs = l.out;
        rebuilt.rhs = r.out;
        res.out = std::make_shared<Pattern>(std::move(rebuilt));
      } else {
        res.out = p;
      }
      break;
    }
  }
  auto transformed = at_node(res.out, p);
  if (transformed) {
    res.out = transformed;
    res.changed = true;
  }
  return res;
}

struct NexRejection {
  std::vector<std::string> variables;
  std::string path;
};

}  // namespace

RewriteResult rewrite_opt_to_diff(const PatternPtr& p) {
  if (!p) throw Error("null pattern");
  RewriteResult result;
  result.rule = "opt2diff";
  auto walked = walk_bottom_up(
      p, [](const PatternPtr& cur, const PatternPtr& orig) -> PatternPtr {
        if (cur->kind != Pattern::Kind::Opt) return nullptr;
        PatternPtr p1 = cur->lhs;
        // the case split looks at the unrewritten right arm
        if (orig->rhs->kind == Pattern::Kind::Filter) {
          PatternPtr p3 = cur->rhs->lhs;
          FormulaPtr c = cur->rhs->constraint;
          PatternPtr kept = p_filter(p_and(p1, p3), c);
          return p_union(kept, p_diff(p1, kept));
        }
        PatternPtr kept = p_and(p1, cur->rhs);
        return p_union(kept, p_diff(p1, kept));
      });
  result.output = walked.out;
  result.applicability =
      walked.changed ? Applicability::Applied : Applicability::Inapplicable;
  return result;
}

RewriteResult rewrite_minus_to_diff(const PatternPtr& p) {
  if (!p) throw Error("null pattern");
  RewriteResult result;
  result.rule = "minus2diff";
  FreshGen fresh;
  fresh.scan(*p);
  auto walked = walk_bottom_up(
      p,
      [&fresh](const PatternPtr& cur, const PatternPtr&) -> PatternPtr {
        if (cur->kind != Pattern::Kind::Minus) return nullptr;
        PatternPtr p1 = cur->lhs;
        PatternPtr p2 = cur->rhs;
        auto v1 = var_set(*p1);
        auto v2 = var_set(*p2);
        std::vector<std::string> shared;
        for (const auto& v : v1)
          if (v2.count(v)) shared.push_back(v);
        if (shared.empty()) return p1;  // disjoint arms cannot eliminate
        std::map<std::string, std::string> ren;
        FormulaPtr cond;
        for (const auto& v : shared) {
          std::string fv = fresh.make();
          ren.emplace(v, fv);
          FormulaPtr eq = f_eq_vars(v, fv);
          cond = cond ? f_and(cond, eq) : eq;
        }
        PatternPtr p3 = rename_pattern_vars(*p2, ren);
        return p_diff(p1, p_filter(p_and(p1, p3), cond));
      });
  result.output = walked.out;
  result.fresh_vars = fresh.made;
  result.applicability =
      walked.changed ? Applicability::Applied : Applicability::Inapplicable;
  return result;
}

RewriteResult rewrite_nex_to_diff(const PatternPtr& p) {
  if (!p) throw Error("null pattern");
  RewriteResult result;
  result.rule = "nex2diff";
  // track the path of the node being visited to report rejections precisely
  struct Rejection : NexRejection {};
  try {
    // bottom-up walk with explicit path bookkeeping
    std::function<WalkResult(const PatternPtr&, const std::string&)> rec =
        [&rec](const PatternPtr& cur,
               const std::string& path) -> WalkResult {
      WalkResult res;
      switch (cur->kind) {
        case Pattern::Kind::Triple:
        case Pattern::Kind::Unit:
          res.out = cur;
          return res;
        case Pattern::Kind::Filter: {
          auto sub = rec(cur->lhs, path + "/left");
          res.changed = sub.changed;
          res.out = sub.changed ? p_filter(sub.out, cur->constraint) : cur;
          return res;
        }
        case Pattern::Kind::Graph: {
          auto sub = rec(cur->lhs, path + "/left");
          res.changed = sub.changed;
          res.out = sub.changed ? p_graph(cur->graph_name, sub.out) : cur;
          return res;
        }
        default: {
          auto l = rec(cur->lhs, path + "/left");
          auto r = rec(cur->rhs, path + "/right");
          PatternPtr rebuilt = cur;
          if (l.changed || r.changed) {
            Pattern copy = *cur;
            copy.lhs = l.out;
            copy.rhs = r.out;
            rebuilt = std::make_shared<Pattern>(std::move(copy));
          }
          res.changed = l.changed || r.changed;
          if (rebuilt->kind == Pattern::Kind::NotExists) {
            auto lv = var_set(*rebuilt->lhs);
            auto rv = var_set(*rebuilt->rhs);
            auto sv = safe_vars(*rebuilt->rhs);
            std::vector<std::string> offending;
            for (const auto& v : lv)
              if (rv.count(v) && !sv.count(v)) offending.push_back(v);
            if (!offending.empty()) {
              Rejection rej;
              rej.variables = offending;
              rej.path = path.empty() ? "/" : path;
              throw rej;
            }
            res.out = p_diff(rebuilt->lhs, rebuilt->rhs);
            res.changed = true;
          } else {
            res.out = rebuilt;
          }
          return res;
        }
      }
    };
    auto walked = rec(p, "");
    result.output = walked.out;
    result.applicability = walked.changed ? Applicability::Applied
                                          : Applicability::Inapplicable;
  } catch (const Rejection& rej) {
    result.applicability = Applicability::Rejected;
    std::string vars;
    for (const auto& v : rej.variables) {
      if (!vars.empty()) vars += ", ";
      vars += v;
    }
    result.reason = "correlated variable(s) " + vars +
                    " not safe in the right arm of NOT-EXISTS at " + rej.path;
  }
  return result;
}

RewriteResult normalize_to_diff(const PatternPtr& p) {
  RewriteResult result;
  result.rule = "w3c2core";
  RewriteResult opt = rewrite_opt_to_diff(p);
  RewriteResult mns = rewrite_minus_to_diff(opt.output);
  RewriteResult nex = rewrite_nex_to_diff(mns.output);
  if (nex.applicability == Applicability::Rejected) {
    result.applicability = Applicability::Rejected;
    result.reason = nex.reason;
    return result;
  }
  result.output = nex.output;
  result.fresh_vars = mns.fresh_vars;
  bool any = opt.applicability == Applicability::Applied ||
             mns.applicability == Applicability::Applied ||
             nex.applicability == Applicability::Applied;
  result.applicability =
      any ? Applicability::Applied : Applicability::Inapplicable;
  return result;
}

bool in_sparql_diff(const Pattern& p) {
  switch (p.kind) {
    case Pattern::Kind::Triple:
    case Pattern::Kind::Unit:
      return true;
    case Pattern::Kind::Filter:
      return in_sparql_diff(*p.lhs);
    case Pattern::Kind::And:
    case Pattern::Kind::Union:
    case Pattern::Kind::Diff:
      return in_sparql_diff(*p.lhs) && in_sparql_diff(*p.rhs);
    default:
      return false;
  }
}

namespace {

int max_reserved_counter_schema(const std::set<std::string>& schema) {
  int best = 0;
  for (const auto& v : schema) best = std::max(best, reserved_counter_of(v));
  return best;
}

int scan_algebra_reserved(const AlgebraExpr& e) {
  int best = 0;
  if (e.kind == AlgebraExpr::Kind::Leaf)
    best = max_reserved_counter_schema(e.schema);
  if (e.formula) best = std::max(best, max_reserved_counter_schema(
                                           formula_vars(*e.formula)));
  for (const auto& [from, to] : e.renaming)
    best = std::max({best, reserved_counter_of(from), reserved_counter_of(to)});
  if (e.lhs) best = std::max(best, scan_algebra_reserved(*e.lhs));
  if (e.rhs) best = std::max(best, scan_algebra_reserved(*e.rhs));
  return best;
}

AlgebraPtr core_diff(const AlgebraPtr& l, const AlgebraPtr& r,
                     const FormulaPtr& f, bool error_as_false) {
  AlgebraPtr j = a_join(l, r);
  AlgebraPtr true_part = a_select(j, f);
  if (error_as_false) return a_sdiff(l, true_part);
  // faithful mode: error rows are the join rows where neither F nor its
  // negation comes out true
  AlgebraPtr decided = a_select(j, f_or(f, f_not(f)));
  AlgebraPtr error_part = a_sdiff(j, decided);
  return a_sdiff(l, a_union(true_part, error_part));
}

AlgebraPtr rewrite_core_rec(const AlgebraPtr& e, bool error_as_false,
                            int& counter) {
  switch (e->kind) {
    case AlgebraExpr::Kind::Leaf:
      return e;
    case AlgebraExpr::Kind::Project:
      return a_project(rewrite_core_rec(e->lhs, error_as_false, counter),
                       e->vars);
    case AlgebraExpr::Kind::Select:
      return a_select(rewrite_core_rec(e->lhs, error_as_false, counter),
                      e->formula);
    case AlgebraExpr::Kind::Rename:
      return a_rename(rewrite_core_rec(e->lhs, error_as_false, counter),
                      e->renaming);
    case AlgebraExpr::Kind::Join:
      return a_join(rewrite_core_rec(e->lhs, error_as_false, counter),
                    rewrite_core_rec(e->rhs, error_as_false, counter));
    case AlgebraExpr::Kind::Union:
      return a_union(rewrite_core_rec(e->lhs, error_as_false, counter),
                     rewrite_core_rec(e->rhs, error_as_false, counter));
    case AlgebraExpr::Kind::SDiff:
      return a_sdiff(rewrite_core_rec(e->lhs, error_as_false, counter),
                     rewrite_core_rec(e->rhs, error_as_false, counter));
    case AlgebraExpr::Kind::Diff: {
      AlgebraPtr l = rewrite_core_rec(e->lhs, error_as_false, counter);
      AlgebraPtr r = rewrite_core_rec(e->rhs, error_as_false, counter);
      return core_diff(l, r, e->formula, error_as_false);
    }
    case AlgebraExpr::Kind::LeftJoin: {
      AlgebraPtr l = rewrite_core_rec(e->lhs, error_as_false, counter);
      AlgebraPtr r = rewrite_core_rec(e->rhs, error_as_false, counter);
      AlgebraPtr true_part = a_select(a_join(l, r), e->formula);
      return a_union(true_part, core_diff(l, r, e->formula, error_as_false));
    }
    case AlgebraExpr::Kind::Minus: {
      AlgebraPtr l = rewrite_core_rec(e->lhs, error_as_false, counter);
      AlgebraPtr r = rewrite_core_rec(e->rhs, error_as_false, counter);
      auto ls = algebra_schema(*l);
      auto rs = algebra_schema(*r);
      std::vector<std::string> shared;
      for (const auto& v : ls)
        if (rs.count(v)) shared.push_back(v);
      if (shared.empty()) return l;
      std::map<std::string, std::string> ren;
      FormulaPtr cond;
      for (const auto& v : shared) {
        std::string fv = fresh_var_name(counter++);
        ren.emplace(v, fv);
        FormulaPtr eq = f_eq_vars(v, fv);
        cond = cond ? f_and(cond, eq) : eq;
      }
      return a_sdiff(l, a_select(a_join(l, a_rename(r, ren)), cond));
    }
  }
  throw Error("unreachable algebra kind");
}

}  // namespace

AlgebraPtr rewrite_algebra_to_core(const AlgebraPtr& e, bool error_as_false) {
  if (!e) throw Error("null algebra expression");
  int counter = scan_algebra_reserved(*e) + 1;
  return rewrite_core_rec(e, error_as_false, counter);
}

RewriteResult encode_naf(const PatternPtr& p1, const PatternPtr& p2,
                         NafScheme scheme) {
  if (!p1 || !p2) throw Error("null pattern");
  RewriteResult result;
  switch (scheme) {
    case NafScheme::Naive: {
      result.rule = "naf:naive";
      auto v1 = var_set(*p1);
      auto v2 = var_set(*p2);
      std::string witness;
      for (const auto& v : v2)
        if (!v1.count(v)) {
          witness = v;  // std::set iterates in order: least name wins
          break;
        }
      if (witness.empty()) {
        result.applicability = Applicability::Rejected;
        result.reason =
            "no-witness-variable: every variable of the negated pattern "
            "occurs in the positive pattern";
        return result;
      }
      result.output = p_filter(p_opt(p1, p2), f_not(f_bound(witness)));
      result.applicability = Applicability::Applied;
      return result;
    }
    case NafScheme::Perez: {
      result.rule = "naf:perez";
      FreshGen fresh;
      fresh.scan(*p1);
      fresh.scan(*p2);
      std::string fs = fresh.make(), fp = fresh.make(), fo = fresh.make();
      PatternPtr probe =
          p_triple(variable(fs), variable(fp), variable(fo));
      result.output = p_filter(p_opt(p1, p_and(p2, probe)),
                               f_not(f_bound(fs)));
      result.fresh_vars = fresh.made;
      result.applicability = Applicability::Applied;
      return result;
    }
    case NafScheme::Polleres:
    case NafScheme::PolleresAsPrinted: {
      result.rule = scheme == NafScheme::Polleres ? "naf:polleres"
                                                  : "naf:polleres-as-printed";
      FreshGen fresh;
      fresh.scan(*p1);
      fresh.scan(*p2);
      std::string fx = fresh.make();
      PatternPtr probe = p_graph(
          naf_graph_name(), p_triple(variable(fx), iri(":p"), iri(":o")));
      if (scheme == NafScheme::Polleres) {
        // probe inside the optional arm: it only fires when p2 matched
        result.output = p_filter(p_opt(p1, p_and(p2, probe)),
                                 f_not(f_bound(fx)));
      } else {
        // literal published form: the probe is conjoined outside the
        // optional, so the witness is always bound
        result.output = p_filter(p_and(p_opt(p1, p2), probe),
                                 f_not(f_bound(fx)));
      }
      result.fresh_vars = fresh.made;
      result.applicability = Applicability::Applied;
      return result;
    }
  }
  throw Error("unreachable naf scheme");
}

bool mentions_naf_graph(const Pattern& p) {
  if (p.kind == Pattern::Kind::Graph && p.graph_name == naf_graph_name())
    return true;
  if (p.lhs && mentions_naf_graph(*p.lhs)) return true;
  if (p.rhs && mentions_naf_graph(*p.rhs)) return true;
  return false;
}

Dataset with_reserved_graphs(const Pattern& p, Dataset d) {
  if (d.named.count(naf_graph_name()))
    throw Error("reserved graph name :__naf may not be defined by datasets");
  if (mentions_naf_graph(p)) d.named.emplace(naf_graph_name(), naf_graph());
  return d;
}

int max_reserved_counter(const Pattern& p) {
  int best = 0;
  for (const auto& v : var_set(p))
    best = std::max(best, reserved_counter_of(v));
  return best;
}

}  // namespace sparqlneg
