#include "sparqlneg/lab.hpp"

#include <cstdlib>
#include <random>

namespace sparqlneg {

GraphSpace GraphSpace::default_space() {
  GraphSpace s;
  s.subjects = {iri(":a"), iri(":b")};
  s.predicates = {iri(":p"), iri(":q")};
  s.objects = {iri(":a"), iri(":b")};
  s.max_triples = 8;
  return s;
}

GraphSpace GraphSpace::explicit_space(std::vector<Graph> graphs) {
  GraphSpace s;
  s.mode = Mode::Explicit;
  s.explicit_graphs = std::move(graphs);
  return s;
}

std::vector<Triple> GraphSpace::universe() const {
  std::set<Triple> triples;
  for (const Term& s : subjects)
    for (const Term& p : predicates)
      for (const Term& o : objects) triples.insert(make_triple(s, p, o));
  if (triples.size() > max_triples)
    throw Error("space-too-large: triple universe has " +
                std::to_string(triples.size()) + " triples, cap is " +
                std::to_string(max_triples));
  return std::vector<Triple>(triples.begin(), triples.end());
}

std::uint64_t space_graph_count(const GraphSpace& space) {
  switch (space.mode) {
    case GraphSpace::Mode::Exhaustive: {
      std::size_t n = space.universe().size();
      if (n >= 63) return UINT64_MAX;
      return std::uint64_t{1} << n;
    }
    case GraphSpace::Mode::Random:
      return space.samples;
    case GraphSpace::Mode::Explicit:
      return space.explicit_graphs.size();
  }
  throw Error("unreachable space mode");
}

std::uint64_t space_budget() {
  const char* raw = std::getenv("SPARQLNEG_SPACE_BUDGET");
  if (!raw || !*raw) return 65536;
  char* end = nullptr;
  unsigned long long value = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0')
    throw Error("invalid SPARQLNEG_SPACE_BUDGET value: " + std::string(raw));
  return value;
}

namespace {
// canonical-order enumeration with early exit
void enumerate_graphs(const GraphSpace& space,
                      const std::function<bool(const Graph&)>& fn) {
  switch (space.mode) {
    case GraphSpace::Mode::Exhaustive: {
      std::vector<Triple> uni = space.universe();
      std::uint64_t count = space_graph_count(space);
      for (std::uint64_t mask = 0; mask < count; ++mask) {
        Graph g;
        for (std::size_t i = 0; i < uni.size(); ++i)
          if (mask & (std::uint64_t{1} << i)) g.add(uni[i]);
        if (!fn(g)) return;
      }
      return;
    }
    case GraphSpace::Mode::Random: {
      std::vector<Triple> uni = space.universe();
      std::mt19937_64 rng(space.seed);
      for (std::uint64_t k = 0; k < space.samples; ++k) {
        Graph g;
        for (const Triple& t : uni)
          if (rng() & 1) g.add(t);
        if (!fn(g)) return;
      }
      return;
    }
    case GraphSpace::Mode::Explicit: {
      for (const Graph& g : space.explicit_graphs)
        if (!fn(g)) return;
      return;
    }
  }
}
}  // namespace

void for_each_graph(const GraphSpace& space,
                    const std::function<void(const Graph&)>& fn) {
  enumerate_graphs(space, [&fn](const Graph& g) {
    fn(g);
    return true;
  });
}

EquivalenceReport check_equiv(const PatternPtr& p1, const PatternPtr& p2,
                              const GraphSpace& space, Semantics semantics) {
  if (!p1 || !p2) throw Error("null pattern");
  std::uint64_t count = space_graph_count(space);
  std::uint64_t budget = space_budget();
  if (count > budget)
    throw Error("space-too-large: " + std::to_string(count) +
                " graphs exceed the budget of " + std::to_string(budget) +
                " (set SPARQLNEG_SPACE_BUDGET to raise it)");

  EquivalenceReport report;
  report.semantics = semantics;
  bool needs_naf = mentions_naf_graph(*p1) || mentions_naf_graph(*p2);

  enumerate_graphs(space, [&](const Graph& g) {
    Dataset ds;
    ds.default_graph = g;
    if (needs_naf) ds.named.emplace(naf_graph_name(), naf_graph());
    EvalContext ctx = EvalContext::for_dataset(std::move(ds));
    MappingMultiset r1 = eval_pattern(*p1, ctx);
    MappingMultiset r2 = eval_pattern(*p2, ctx);
    if (semantics == Semantics::Set) {
      r1 = r1.collapsed();
      r2 = r2.collapsed();
    }
    ++report.graphs_checked;
    if (!(r1 == r2)) {
      report.equivalent = false;
      report.witness_graph = g;
      report.lhs = std::move(r1);
      report.rhs = std::move(r2);
      return false;
    }
    return true;
  });
  return report;
}

std::map<std::string, MappingMultiset> fixture_multisets() {
  std::map<std::string, MappingMultiset> out;
  out["empty"] = MappingMultiset{};
  out["omega0"] = omega0();
  MappingMultiset o1;
  o1.add(make_mapping({{"?X", iri(":a")}}), 1);
  o1.add(make_mapping({{"?X", iri(":b")}}), 2);  // duplicate splits bag vs set
  out["omega1"] = o1;
  MappingMultiset o2;
  o2.add(make_mapping({{"?X", iri(":a")}, {"?Y", iri(":w")}}), 1);
  out["omega2"] = o2;
  MappingMultiset o3;
  o3.add(make_mapping({{"?Z", iri(":c")}}), 1);
  out["omega3"] = o3;
  return out;
}

const std::vector<std::string>& fixture_order() {
  static const std::vector<std::string> order = {"empty", "omega0", "omega1",
                                                 "omega2", "omega3"};
  return order;
}

namespace {

using Neg = MappingMultiset (*)(const MappingMultiset&, const MappingMultiset&);

struct AxiomSides {
  MappingMultiset lhs, rhs;
};

AxiomSides axiom_sides(char axiom, Neg neg, const MappingMultiset& a,
                       const MappingMultiset& b, const MappingMultiset& c) {
  const MappingMultiset none;
  switch (axiom) {
    case 'a': return {neg(a, a), none};
    case 'b': return {neg(a, none), a};
    case 'c': return {neg(none, a), none};
    case 'd': return {neg(a, neg(a, neg(a, b))), neg(a, b)};
    case 'e': return {neg(join(a, b), b), none};
    case 'f': return {join(neg(a, b), b), none};
    case 'g': return {neg(a, join(a, b)), neg(a, b)};
    case 'h': return {join(a, neg(a, b)), neg(a, b)};
    case 'i': return {bag_union(neg(a, b), b), bag_union(a, b)};
    case 'j': return {neg(bag_union(a, b), b), neg(a, b)};
    case 'k': return {neg(a, join(b, c)), bag_union(neg(a, b), neg(a, c))};
    case 'l': return {neg(a, bag_union(b, c)), join(neg(a, b), neg(a, c))};
    default: throw Error("unknown axiom");
  }
}

}  // namespace

std::vector<AxiomCase> run_axiom_matrix(NegOp op, Semantics semantics) {
  Neg neg = op == NegOp::Diff ? &sdiff : &minus;
  auto fixtures = fixture_multisets();
  const auto& order = fixture_order();
  std::vector<AxiomCase> out;

  auto record = [&](char axiom, const std::vector<std::string>& slots) {
    const MappingMultiset& a = fixtures.at(slots[0]);
    const MappingMultiset& b = fixtures.at(slots[1]);
    const MappingMultiset& c =
        slots.size() > 2 ? fixtures.at(slots[2]) : fixtures.at("empty");
    AxiomSides sides = axiom_sides(axiom, neg, a, b, c);
    AxiomCase cs;
    cs.axiom = axiom;
    cs.op = op;
    cs.semantics = semantics;
    cs.slots = slots;
    if (semantics == Semantics::Set) {
      cs.lhs = sides.lhs.collapsed();
      cs.rhs = sides.rhs.collapsed();
    } else {
      cs.lhs = std::move(sides.lhs);
      cs.rhs = std::move(sides.rhs);
    }
    cs.holds = cs.lhs == cs.rhs;
    out.push_back(std::move(cs));
  };

  for (char axiom = 'a'; axiom <= 'j'; ++axiom)
    for (const auto& sa : order)
      for (const auto& sb : order) record(axiom, {sa, sb});
  for (char axiom : {'k', 'l'})
    for (const auto& sa : order)
      for (const auto& sb : order)
        for (const auto& sc : order) record(axiom, {sa, sb, sc});
  return out;
}

std::string published_axiom_note(char axiom, NegOp op) {
  bool is_diff = op == NegOp::Diff;
  switch (axiom) {
    case 'a':
    case 'b':
    case 'c':
    case 'd':
      return "published claim: satisfied in all cases";
    case 'e':
      return is_diff ? "published claim: satisfied in all cases"
                     : "published claim: fails in four cases";
    case 'f':
      return is_diff ? "published claim: satisfied in all cases"
                     : "published claim: fails in eleven cases";
    case 'g':
      return is_diff ? "published claim: satisfied in all cases"
                     : "published claim: fails in seven cases";
    case 'h':
      return is_diff
                 ? "published claim: fails under bag semantics in five cases"
                 : "published claim: fails under bag semantics in twelve "
                   "cases";
    case 'i':
      return is_diff ? "published claim: distinct solutions in ten cases, "
                       "bag-only failures in four"
                     : "published claim: bag-only failures in three cases";
    case 'j':
      return is_diff ? "published claim: satisfied in all cases"
                     : "published claim: fails in four cases";
    case 'k':
      return is_diff ? "published claim: fails under bag semantics in ten "
                       "cases"
                     : "published claim: distinct solutions in twenty-two "
                       "cases, bag-only failures in sixty-five";
    case 'l':
      return is_diff
                 ? "published claim: fails under bag semantics in seven cases"
                 : "published claim: fails under bag semantics in forty-eight "
                   "cases";
    default:
      return "";
  }
}

namespace {

Term aux_graph_name() { return iri(":aux"); }

struct ShapeReal {
  PatternPtr pattern;
  MappingMultiset expected;
};

MappingMultiset expected_shape_value(const std::string& shape) {
  if (shape == "empty") return MappingMultiset{};
  if (shape == "omega0") return omega0();
  if (shape == "omega1") {
    MappingMultiset o;
    o.add(make_mapping({{"?X", iri(":a")}}), 1);
    o.add(make_mapping({{"?X", iri(":f")}}), 1);
    return o;
  }
  if (shape == "omega2") {
    MappingMultiset o;
    o.add(make_mapping({{"?X", iri(":a")}, {"?Y", iri(":w")}}), 1);
    return o;
  }
  if (shape == "omega3") {
    MappingMultiset o;
    o.add(make_mapping({{"?Z", iri(":d")}}), 1);
    return o;
  }
  throw Error("unknown fixture shape: " + shape);
}

ShapeReal realize_shape(const std::string& shape, bool g0_empty) {
  ShapeReal real;
  real.expected = expected_shape_value(shape);
  if (shape == "empty") {
    real.pattern = p_triple(variable("?U"), iri(":none"), variable("?V"));
  } else if (shape == "omega0") {
    real.pattern = p_unit();
  } else if (shape == "omega1") {
    real.pattern = p_triple(variable("?X"), iri(":p"), iri(":b"));
  } else if (shape == "omega2") {
    PatternPtr t = p_triple(variable("?X"), iri(":q"), variable("?Y"));
    // with an empty default graph the pairing shape needs a named graph
    real.pattern = g0_empty ? p_graph(aux_graph_name(), t) : t;
  } else if (shape == "omega3") {
    real.pattern = p_triple(iri(":c"), iri(":r"), variable("?Z"));
  } else {
    throw Error("unknown fixture shape: " + shape);
  }
  return real;
}

Dataset table2_dataset(bool g0_empty) {
  Dataset ds;
  if (!g0_empty) {
    ds.default_graph.add(make_triple(iri(":a"), iri(":p"), iri(":b")));
    ds.default_graph.add(make_triple(iri(":f"), iri(":p"), iri(":b")));
    ds.default_graph.add(make_triple(iri(":a"), iri(":q"), iri(":w")));
    ds.default_graph.add(make_triple(iri(":c"), iri(":r"), iri(":d")));
  } else {
    Graph aux;
    aux.add(make_triple(iri(":a"), iri(":q"), iri(":w")));
    ds.named.emplace(aux_graph_name(), aux);
  }
  return ds;
}

}  // namespace

std::vector<Table2Row> run_table2() {
  struct RowSpec {
    int row;
    const char* p1;
    const char* p2;
  };
  static const RowSpec rows[] = {
      {1, "empty", "empty"},   {2, "empty", "omega0"}, {3, "empty", "omega2"},
      {4, "omega0", "empty"},  {5, "omega0", "omega0"}, {6, "omega0", "omega2"},
      {7, "omega1", "empty"},  {8, "omega1", "omega0"}, {9, "omega1", "omega1"},
      {10, "omega1", "omega2"}, {11, "omega1", "omega3"},
  };

  std::vector<Table2Row> out;
  for (const RowSpec& spec : rows) {
    for (bool g0_empty : {false, true}) {
      Table2Row row;
      row.row = spec.row;
      row.g0_empty = g0_empty;
      row.p1_shape = spec.p1;
      row.p2_shape = spec.p2;
      // the published table leaves rows 6-11 unpopulated when G0 is empty
      row.populated = !g0_empty || spec.row <= 5;
      if (!row.populated) {
        out.push_back(std::move(row));
        continue;
      }

      Dataset ds = table2_dataset(g0_empty);
      ShapeReal r1 = realize_shape(spec.p1, g0_empty);
      ShapeReal r2 = realize_shape(spec.p2, g0_empty);
      EvalContext ctx = EvalContext::for_dataset(ds);
      auto check = [&](const ShapeReal& real, const char* which) {
        MappingMultiset got = eval_pattern(*real.pattern, ctx);
        if (!(got == real.expected))
          throw Error(std::string("unrealizable-row: row ") +
                      std::to_string(spec.row) + " " + which +
                      " does not realise its stipulated shape");
      };
      check(r1, "P1");
      check(r2, "P2");

      row.diff = eval_pattern(*p_diff(r1.pattern, r2.pattern), ctx);

      RewriteResult perez = encode_naf(r1.pattern, r2.pattern,
                                       NafScheme::Perez);
      row.p3 = eval_pattern(*perez.output, ctx);

      RewriteResult polleres = encode_naf(r1.pattern, r2.pattern,
                                          NafScheme::Polleres);
      Dataset with_probe = with_reserved_graphs(*polleres.output, ds);
      EvalContext probe_ctx = EvalContext::for_dataset(std::move(with_probe));
      row.p4 = eval_pattern(*polleres.output, probe_ctx);

      row.p3_agrees = row.p3 == row.diff;
      row.p4_agrees = row.p4 == row.diff;
      out.push_back(std::move(row));
    }
  }
  return out;
}

std::string render_mapping(const Mapping& m) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : m.bindings) {
    if (!first) out += ",";
    first = false;
    out += v + "=";
    if (t.is_literal())
      out += "\"" + t.lexical + "\"";
    else
      out += t.lexical;
  }
  out += "}";
  return out;
}

std::string render_multiset(const MappingMultiset& o) {
  if (o.empty()) return "{}";
  std::string out = "{";
  bool first = true;
  for (const auto& [m, c] : o.entries()) {
    if (!first) out += ",";
    first = false;
    out += render_mapping(m) + "*" + std::to_string(c);
  }
  out += "}";
  return out;
}

}  // namespace sparqlneg
