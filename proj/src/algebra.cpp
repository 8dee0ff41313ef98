#include "sparqlneg/algebra.hpp"

namespace sparqlneg {

MappingMultiset project(const MappingMultiset& o,
                        const std::set<std::string>& w) {
  MappingMultiset out;
  for (const auto& [m, c] : o.entries()) out.add(restrict_to(m, w), c);
  return out;
}

MappingMultiset select(const MappingMultiset& o, const Formula& f) {
  MappingMultiset out;
  for (const auto& [m, c] : o.entries())
    if (eval_formula(f, m) == TruthValue::True) out.add(m, c);
  return out;
}

MappingMultiset join(const MappingMultiset& o1, const MappingMultiset& o2) {
  MappingMultiset out;
  for (const auto& [m1, c1] : o1.entries())
    for (const auto& [m2, c2] : o2.entries())
      if (compatible(m1, m2)) out.add(merge(m1, m2), c1 * c2);
  return out;
}

MappingMultiset diff(const MappingMultiset& o1, const MappingMultiset& o2,
                     const Formula& f, bool error_as_false) {
  MappingMultiset out;
  for (const auto& [m1, c1] : o1.entries()) {
    bool keep = true;
    for (const auto& [m2, c2] : o2.entries()) {
      if (!compatible(m1, m2)) continue;
      TruthValue tv = eval_formula(f, merge(m1, m2));
      bool counts_false =
          tv == TruthValue::False ||
          (error_as_false && tv == TruthValue::Error);
      if (!counts_false) {
        keep = false;
        break;
      }
    }
    if (keep) out.add(m1, c1);
  }
  return out;
}

MappingMultiset bag_union(const MappingMultiset& o1,
                          const MappingMultiset& o2) {
  MappingMultiset out = o1;
  for (const auto& [m, c] : o2.entries()) out.add(m, c);
  return out;
}

MappingMultiset minus(const MappingMultiset& o1, const MappingMultiset& o2) {
  MappingMultiset out;
  for (const auto& [m1, c1] : o1.entries()) {
    bool keep = true;
    for (const auto& [m2, c2] : o2.entries()) {
      if (compatible(m1, m2) && !dom_disjoint(m1, m2)) {
        keep = false;
        break;
      }
    }
    if (keep) out.add(m1, c1);
  }
  return out;
}

MappingMultiset sdiff(const MappingMultiset& o1, const MappingMultiset& o2) {
  MappingMultiset out;
  for (const auto& [m1, c1] : o1.entries()) {
    bool keep = true;
    for (const auto& [m2, c2] : o2.entries()) {
      if (compatible(m1, m2)) {
        keep = false;
        break;
      }
    }
    if (keep) out.add(m1, c1);
  }
  return out;
}

MappingMultiset leftjoin(const MappingMultiset& o1, const MappingMultiset& o2,
                         const Formula& f, bool error_as_false) {
  return bag_union(select(join(o1, o2), f), diff(o1, o2, f, error_as_false));
}

MappingMultiset rename_vars(const MappingMultiset& o,
                            const std::map<std::string, std::string>& ren) {
  MappingMultiset out;
  for (const auto& [m, c] : o.entries()) {
    Mapping renamed;
    for (const auto& [v, t] : m.bindings) {
      auto it = ren.find(v);
      const std::string& target = it == ren.end() ? v : it->second;
      if (!renamed.bindings.emplace(target, t).second)
        throw Error("rename collision on variable " + target);
    }
    out.add(renamed, c);
  }
  return out;
}

namespace {
AlgebraPtr node(AlgebraExpr e) {
  return std::make_shared<AlgebraExpr>(std::move(e));
}
}  // namespace

AlgebraPtr a_leaf(std::string name, std::set<std::string> schema) {
  AlgebraExpr e;
  e.kind = AlgebraExpr::Kind::Leaf;
  e.leaf_name = std::move(name);
  e.schema = std::move(schema);
  return node(std::move(e));
}

AlgebraPtr a_project(AlgebraPtr sub, std::set<std::string> vars) {
  AlgebraExpr e;
  e.kind = AlgebraExpr::Kind::Project;
  e.lhs = std::move(sub);
  e.vars = std::move(vars);
  return node(std::move(e));
}

AlgebraPtr a_select(AlgebraPtr sub, FormulaPtr f) {
  AlgebraExpr e;
  e.kind = AlgebraExpr::Kind::Select;
  e.lhs = std::move(sub);
  e.formula = std::move(f);
  return node(std::move(e));
}

AlgebraPtr a_join(AlgebraPtr l, AlgebraPtr r) {
  AlgebraExpr e;
  e.kind = AlgebraExpr::Kind::Join;
  e.lhs = std::move(l);
  e.rhs = std::move(r);
  return node(std::move(e));
}

AlgebraPtr a_diff(AlgebraPtr l, AlgebraPtr r, FormulaPtr f) {
  AlgebraExpr e;
  e.kind = AlgebraExpr::Kind::Diff;
  e.lhs = std::move(l);
  e.rhs = std::move(r);
  e.formula = std::move(f);
  return node(std::move(e));
}

AlgebraPtr a_union(AlgebraPtr l, AlgebraPtr r) {
  AlgebraExpr e;
  e.kind = AlgebraExpr::Kind::Union;
  e.lhs = std::move(l);
  e.rhs = std::move(r);
  return node(std::move(e));
}

AlgebraPtr a_minus(AlgebraPtr l, AlgebraPtr r) {
  AlgebraExpr e;
  e.kind = AlgebraExpr::Kind::Minus;
  e.lhs = std::move(l);
  e.rhs = std::move(r);
  return node(std::move(e));
}

AlgebraPtr a_leftjoin(AlgebraPtr l, AlgebraPtr r, FormulaPtr f) {
  AlgebraExpr e;
  e.kind = AlgebraExpr::Kind::LeftJoin;
  e.lhs = std::move(l);
  e.rhs = std::move(r);
  e.formula = std::move(f);
  return node(std::move(e));
}

AlgebraPtr a_sdiff(AlgebraPtr l, AlgebraPtr r) {
  AlgebraExpr e;
  e.kind = AlgebraExpr::Kind::SDiff;
  e.lhs = std::move(l);
  e.rhs = std::move(r);
  return node(std::move(e));
}

AlgebraPtr a_rename(AlgebraPtr sub, std::map<std::string, std::string> ren) {
  AlgebraExpr e;
  e.kind = AlgebraExpr::Kind::Rename;
  e.lhs = std::move(sub);
  e.renaming = std::move(ren);
  return node(std::move(e));
}

std::set<std::string> algebra_schema(const AlgebraExpr& e) {
  switch (e.kind) {
    case AlgebraExpr::Kind::Leaf:
      return e.schema;
    case AlgebraExpr::Kind::Project: {
      auto sub = algebra_schema(*e.lhs);
      std::set<std::string> out;
      for (const auto& v : e.vars)
        if (sub.count(v)) out.insert(v);
      return out;
    }
    case AlgebraExpr::Kind::Select:
      return algebra_schema(*e.lhs);
    case AlgebraExpr::Kind::Join:
    case AlgebraExpr::Kind::Union:
    case AlgebraExpr::Kind::LeftJoin: {
      auto out = algebra_schema(*e.lhs);
      auto r = algebra_schema(*e.rhs);
      out.insert(r.begin(), r.end());
      return out;
    }
    case AlgebraExpr::Kind::Diff:
    case AlgebraExpr::Kind::Minus:
    case AlgebraExpr::Kind::SDiff:
      return algebra_schema(*e.lhs);
    case AlgebraExpr::Kind::Rename: {
      auto sub = algebra_schema(*e.lhs);
      std::set<std::string> out;
      for (const auto& v : sub) {
        auto it = e.renaming.find(v);
        out.insert(it == e.renaming.end() ? v : it->second);
      }
      return out;
    }
  }
  throw Error("unreachable algebra kind");
}

bool algebra_is_core(const AlgebraExpr& e) {
  switch (e.kind) {
    case AlgebraExpr::Kind::Diff:
    case AlgebraExpr::Kind::Minus:
    case AlgebraExpr::Kind::LeftJoin:
      return false;
    case AlgebraExpr::Kind::Leaf:
      return true;
    case AlgebraExpr::Kind::Project:
    case AlgebraExpr::Kind::Select:
    case AlgebraExpr::Kind::Rename:
      return algebra_is_core(*e.lhs);
    default:
      return algebra_is_core(*e.lhs) && algebra_is_core(*e.rhs);
  }
}

MappingMultiset eval_algebra(const AlgebraExpr& e, const AlgebraEnv& env,
                             bool error_as_false) {
  switch (e.kind) {
    case AlgebraExpr::Kind::Leaf: {
      auto it = env.find(e.leaf_name);
      if (it == env.end()) throw Error("unbound-input-name: " + e.leaf_name);
      return it->second;
    }
    case AlgebraExpr::Kind::Project:
      return project(eval_algebra(*e.lhs, env, error_as_false), e.vars);
    case AlgebraExpr::Kind::Select:
      return select(eval_algebra(*e.lhs, env, error_as_false), *e.formula);
    case AlgebraExpr::Kind::Join:
      return join(eval_algebra(*e.lhs, env, error_as_false),
                  eval_algebra(*e.rhs, env, error_as_false));
    case AlgebraExpr::Kind::Diff:
      return diff(eval_algebra(*e.lhs, env, error_as_false),
                  eval_algebra(*e.rhs, env, error_as_false), *e.formula,
                  error_as_false);
    case AlgebraExpr::Kind::Union:
      return bag_union(eval_algebra(*e.lhs, env, error_as_false),
                       eval_algebra(*e.rhs, env, error_as_false));
    case AlgebraExpr::Kind::Minus:
      return minus(eval_algebra(*e.lhs, env, error_as_false),
                   eval_algebra(*e.rhs, env, error_as_false));
    case AlgebraExpr::Kind::LeftJoin:
      return leftjoin(eval_algebra(*e.lhs, env, error_as_false),
                      eval_algebra(*e.rhs, env, error_as_false), *e.formula,
                      error_as_false);
    case AlgebraExpr::Kind::SDiff:
      return sdiff(eval_algebra(*e.lhs, env, error_as_false),
                   eval_algebra(*e.rhs, env, error_as_false));
    case AlgebraExpr::Kind::Rename:
      return rename_vars(eval_algebra(*e.lhs, env, error_as_false),
                         e.renaming);
  }
  throw Error("unreachable algebra kind");
}

}  // namespace sparqlneg
