#include "doctest.h"
#include "sparqlneg/pattern.hpp"

using namespace sparqlneg;

namespace {

Graph small_graph() {
  Graph g;
  g.add(make_triple(iri(":a"), iri(":p"), iri(":b")));
  g.add(make_triple(iri(":b"), iri(":q"), iri(":c")));
  return g;
}

// the four-triple counterexample graph for correlated NOT-EXISTS
Graph nested_graph() {
  Graph g;
  g.add(make_triple(iri(":a"), iri(":p"), iri(":b")));
  g.add(make_triple(iri(":f"), iri(":p"), iri(":b")));
  g.add(make_triple(iri(":c"), iri(":q"), iri(":d")));
  g.add(make_triple(iri(":e"), iri(":r"), iri(":a")));
  return g;
}

PatternPtr nested_not_exists() {
  return p_not_exists(
      p_triple(variable("?X"), iri(":p"), iri(":b")),
      p_not_exists(p_triple(variable("?Z"), iri(":q"), iri(":d")),
                   p_triple(variable("?W"), iri(":r"), variable("?X"))));
}

}  // namespace

TEST_CASE("triple patterns need at least one variable") {
  CHECK_THROWS_AS(p_triple(iri(":a"), iri(":p"), iri(":b")), Error);
  CHECK_THROWS_AS(
      p_triple(variable("?X"), literal("w"), variable("?Y")), Error);
  CHECK_NOTHROW(p_triple(variable("?X"), variable("?P"), variable("?Y")));
}

TEST_CASE("triple patterns match with cardinality one") {
  EvalContext ctx = EvalContext::for_graph(small_graph());
  MappingMultiset r =
      eval_pattern(*p_triple(variable("?X"), iri(":p"), variable("?Y")), ctx);
  CHECK(r == MappingMultiset::of(
                 {{make_mapping({{"?X", iri(":a")}, {"?Y", iri(":b")}}), 1}}));

  // repeated variables must match consistently
  Graph g;
  g.add(make_triple(iri(":a"), iri(":p"), iri(":a")));
  g.add(make_triple(iri(":a"), iri(":p"), iri(":b")));
  MappingMultiset rr = eval_pattern(
      *p_triple(variable("?X"), iri(":p"), variable("?X")),
      EvalContext::for_graph(g));
  CHECK(rr == MappingMultiset::of({{make_mapping({{"?X", iri(":a")}}), 1}}));
}

TEST_CASE("and joins, union adds, filter selects") {
  EvalContext ctx = EvalContext::for_graph(small_graph());
  PatternPtr xy = p_triple(variable("?X"), iri(":p"), variable("?Y"));
  PatternPtr yz = p_triple(variable("?Y"), iri(":q"), variable("?Z"));

  CHECK(eval_pattern(*p_and(xy, yz), ctx) ==
        MappingMultiset::of({{make_mapping({{"?X", iri(":a")},
                                            {"?Y", iri(":b")},
                                            {"?Z", iri(":c")}}),
                              1}}));

  MappingMultiset u = eval_pattern(*p_union(xy, xy), ctx);
  CHECK(u.total_card() == 2);
  CHECK(u.distinct_size() == 1);

  CHECK(eval_pattern(*p_filter(xy, f_eq("?X", iri(":a"))), ctx)
            .total_card() == 1);
  CHECK(eval_pattern(*p_filter(xy, f_eq("?X", iri(":b"))), ctx).empty());
  // an error-valued constraint drops the row like false
  CHECK(eval_pattern(*p_filter(xy, f_eq("?Q", iri(":a"))), ctx).empty());
}

TEST_CASE("opt splits on a filter right arm") {
  EvalContext ctx = EvalContext::for_graph(small_graph());
  PatternPtr xy = p_triple(variable("?X"), iri(":p"), variable("?Y"));
  PatternPtr yz = p_triple(variable("?Y"), iri(":q"), variable("?Z"));

  // plain arm: the optional part extends the solution when it matches
  CHECK(eval_pattern(*p_opt(xy, yz), ctx) ==
        MappingMultiset::of({{make_mapping({{"?X", iri(":a")},
                                            {"?Y", iri(":b")},
                                            {"?Z", iri(":c")}}),
                              1}}));

  // filter arm: the constraint conditions the extension; when it fails the
  // bare left row survives
  PatternPtr guarded = p_opt(xy, p_filter(yz, f_eq("?Z", iri(":d"))));
  CHECK(eval_pattern(*guarded, ctx) ==
        MappingMultiset::of(
            {{make_mapping({{"?X", iri(":a")}, {"?Y", iri(":b")}}), 1}}));
}

TEST_CASE("minus ignores domain-disjoint partners, diff and not-exists do not") {
  Graph g;
  g.add(make_triple(iri(":a"), iri(":p"), iri(":b")));
  EvalContext ctx = EvalContext::for_graph(g);
  PatternPtr px = p_triple(variable("?X"), iri(":p"), iri(":b"));
  PatternPtr py = p_triple(variable("?Y"), iri(":p"), iri(":b"));

  CHECK(eval_pattern(*p_minus(px, py), ctx) ==
        MappingMultiset::of({{make_mapping({{"?X", iri(":a")}}), 1}}));
  CHECK(eval_pattern(*p_diff(px, py), ctx).empty());
  CHECK(eval_pattern(*p_not_exists(px, py), ctx).empty());

  // sharing the variable, all three remove the matched row
  CHECK(eval_pattern(*p_minus(px, px), ctx).empty());
  CHECK(eval_pattern(*p_diff(px, px), ctx).empty());
  CHECK(eval_pattern(*p_not_exists(px, px), ctx).empty());
}

TEST_CASE("correlated not-exists differs from diff") {
  EvalContext ctx = EvalContext::for_graph(nested_graph());

  CHECK(eval_pattern(*nested_not_exists(), ctx) ==
        MappingMultiset::of({{make_mapping({{"?X", iri(":a")}}), 1}}));

  PatternPtr diffed = p_diff(
      p_triple(variable("?X"), iri(":p"), iri(":b")),
      p_diff(p_triple(variable("?Z"), iri(":q"), iri(":d")),
             p_triple(variable("?W"), iri(":r"), variable("?X"))));
  CHECK(eval_pattern(*diffed, ctx) ==
        MappingMultiset::of({{make_mapping({{"?X", iri(":a")}}), 1},
                             {make_mapping({{"?X", iri(":f")}}), 1}}));
}

TEST_CASE("graph nodes switch the active graph") {
  Dataset ds;
  ds.default_graph = small_graph();
  Graph g1, g2;
  g1.add(make_triple(iri(":a"), iri(":p"), iri(":b")));
  g2.add(make_triple(iri(":f"), iri(":p"), iri(":b")));
  ds.named.emplace(iri(":g1"), g1);
  ds.named.emplace(iri(":g2"), g2);
  EvalContext ctx = EvalContext::for_dataset(ds);

  PatternPtr px = p_triple(variable("?X"), iri(":p"), iri(":b"));

  CHECK(eval_pattern(*p_graph(iri(":g1"), px), ctx) ==
        MappingMultiset::of({{make_mapping({{"?X", iri(":a")}}), 1}}));
  // unknown graph names contribute nothing
  CHECK(eval_pattern(*p_graph(iri(":nope"), px), ctx).empty());

  // a variable name unions over the named graphs, binding the name
  CHECK(eval_pattern(*p_graph(variable("?G"), px), ctx) ==
        MappingMultiset::of(
            {{make_mapping({{"?G", iri(":g1")}, {"?X", iri(":a")}}), 1},
             {make_mapping({{"?G", iri(":g2")}, {"?X", iri(":f")}}), 1}}));

  // the default graph is not reachable through a variable name
  Dataset only_default;
  only_default.default_graph = small_graph();
  CHECK(eval_pattern(*p_graph(variable("?G"), px),
                     EvalContext::for_dataset(only_default))
            .empty());
}

TEST_CASE("unit pattern yields the unit multiset") {
  EvalContext ctx = EvalContext::for_graph(Graph{});
  CHECK(eval_pattern(*p_unit(), ctx) == omega0());
}

TEST_CASE("var_set collects every variable, safe_vars only guaranteed ones") {
  PatternPtr p = p_filter(p_triple(variable("?X"), iri(":p"), iri(":b")),
                          f_eq_vars("?X", "?Y"));
  CHECK(var_set(*p) == std::set<std::string>{"?X", "?Y"});
  CHECK(safe_vars(*p) == std::set<std::string>{"?X"});

  PatternPtr xt = p_triple(variable("?X"), iri(":p"), iri(":b"));
  PatternPtr yt = p_triple(variable("?Y"), iri(":p"), iri(":b"));
  PatternPtr xyt = p_triple(variable("?X"), iri(":p"), variable("?Y"));

  CHECK(safe_vars(*p_and(xt, yt)) == std::set<std::string>{"?X", "?Y"});
  CHECK(safe_vars(*p_union(xyt, xt)) == std::set<std::string>{"?X"});
  CHECK(safe_vars(*p_opt(xt, yt)) == std::set<std::string>{});
  CHECK(safe_vars(*p_minus(xt, yt)) == std::set<std::string>{"?X"});
  CHECK(safe_vars(*p_not_exists(xt, yt)) == std::set<std::string>{"?X"});
  CHECK(safe_vars(*p_diff(xt, yt)) == std::set<std::string>{"?X"});
  CHECK(safe_vars(*p_graph(variable("?G"), xt)) ==
        std::set<std::string>{"?G", "?X"});
  CHECK(safe_vars(*p_unit()) == std::set<std::string>{});
}

TEST_CASE("fragment membership reports unsafe correlated variables") {
  PatternPtr nested = nested_not_exists();
  FragmentReport rep = in_fragment_ex(*nested);
  CHECK_FALSE(rep.in_fragment);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].variable == "?X");
  CHECK(rep.violations[0].path == "/");

  // the inner correlated pair on its own is fine: ?Z is safe in its arm
  CHECK(in_fragment_ex(*nested->rhs).in_fragment);

  // uncorrelated not-exists is always in the fragment
  CHECK(in_fragment_ex(*p_not_exists(
                           p_triple(variable("?X"), iri(":p"), iri(":b")),
                           p_triple(variable("?Y"), iri(":q"), iri(":d"))))
            .in_fragment);

  // a correlated variable that only occurs in a filter of the right arm is
  // unsafe there
  PatternPtr filter_only = p_not_exists(
      p_triple(variable("?X"), iri(":p"), iri(":b")),
      p_filter(p_triple(variable("?Z"), iri(":q"), iri(":d")),
               f_eq_vars("?Z", "?X")));
  CHECK_FALSE(in_fragment_ex(*filter_only).in_fragment);
}

TEST_CASE("substitution instantiates triples, constraints and graph names") {
  Mapping m = make_mapping({{"?X", iri(":a")}, {"?G", iri(":g1")}});

  PatternPtr p = p_filter(
      p_graph(variable("?G"),
              p_triple(variable("?X"), iri(":p"), variable("?Y"))),
      f_eq_vars("?X", "?Y"));
  PatternPtr s = substitute(m, *p);

  CHECK(s->kind == Pattern::Kind::Filter);
  CHECK(s->constraint->kind == Formula::Kind::EqVarTerm);
  CHECK(s->lhs->kind == Pattern::Kind::Graph);
  CHECK(s->lhs->graph_name == iri(":g1"));
  CHECK(s->lhs->lhs->triple.s == iri(":a"));
  CHECK(s->lhs->lhs->triple.o == variable("?Y"));

  // substituted triple patterns may become ground
  PatternPtr ground =
      substitute(make_mapping({{"?X", iri(":a")}}),
                 *p_triple(variable("?X"), iri(":p"), iri(":b")));
  CHECK(var_set(*ground).empty());
  Graph g;
  g.add(make_triple(iri(":a"), iri(":p"), iri(":b")));
  CHECK(eval_pattern(*ground, EvalContext::for_graph(g)) == omega0());
  CHECK(eval_pattern(*ground, EvalContext::for_graph(Graph{})).empty());
}

TEST_CASE("evaluation enforces the recursion depth limit") {
  PatternPtr p = p_triple(variable("?X"), iri(":p"), iri(":b"));
  for (int i = 0; i < 70; ++i) p = p_and(p, p_unit());
  EvalContext ctx = EvalContext::for_graph(small_graph());
  CHECK_THROWS_AS(eval_pattern(*p, ctx), Error);

  EvalContext deep = ctx;
  deep.depth_limit = 128;
  CHECK_NOTHROW(eval_pattern(*p, deep));
}

TEST_CASE("set semantics collapses cardinalities") {
  EvalContext ctx = EvalContext::for_graph(small_graph());
  PatternPtr xy = p_triple(variable("?X"), iri(":p"), variable("?Y"));
  PatternPtr doubled = p_union(xy, xy);

  CHECK(eval_pattern(*doubled, ctx).total_card() == 2);
  CHECK(eval_set_semantics(*doubled, ctx).total_card() == 1);
}

TEST_CASE("pattern_equal distinguishes structure") {
  PatternPtr a = nested_not_exists();
  CHECK(pattern_equal(*a, *nested_not_exists()));
  CHECK_FALSE(pattern_equal(*a, *a->lhs));
  CHECK_FALSE(pattern_equal(*p_unit(), *a));
  CHECK(pattern_equal(*p_unit(), *p_unit()));
}
