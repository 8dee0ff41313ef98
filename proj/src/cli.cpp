#include "sparqlneg/cli.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sparqlneg/lab.hpp"
#include "sparqlneg/text.hpp"

namespace sparqlneg {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// rewriter outputs feed back into every subcommand, so CLI file loads accept
// the reserved fresh-variable prefix
PatternPtr load_pattern(const std::string& path) {
  ParseOptions opts;
  opts.allow_reserved_vars = true;
  return parse_pattern(read_file(path), opts);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

Term space_term(const std::string& raw) {
  if (raw.empty()) throw Error("empty term in --space");
  if (raw[0] == ':' || raw[0] == '<') return iri(raw);
  return iri(":" + raw);
}

std::uint64_t parse_u64(const std::string& raw, const std::string& key) {
  try {
    std::size_t used = 0;
    std::uint64_t v = std::stoull(raw, &used);
    if (used != raw.size()) throw Error("");
    return v;
  } catch (...) {
    throw Error("invalid number for '" + key + "' in --space: " + raw);
  }
}

// grammar: "s=a,b;p=p,q;o=a,b;max=8" plus optional
// "mode=exhaustive|random;samples=N;seed=N"
GraphSpace parse_space(const std::string& text) {
  GraphSpace sp = GraphSpace::default_space();
  if (text.empty()) return sp;
  for (const std::string& segment : split(text, ';')) {
    if (segment.empty()) continue;
    std::size_t eq = segment.find('=');
    if (eq == std::string::npos)
      throw Error("expected key=value in --space segment: " + segment);
    std::string key = segment.substr(0, eq);
    std::string value = segment.substr(eq + 1);
    if (key == "s" || key == "p" || key == "o") {
      std::vector<Term> terms;
      for (const std::string& v : split(value, ',')) terms.push_back(space_term(v));
      if (key == "s") sp.subjects = std::move(terms);
      else if (key == "p") sp.predicates = std::move(terms);
      else sp.objects = std::move(terms);
    } else if (key == "max") {
      sp.max_triples = static_cast<std::size_t>(parse_u64(value, key));
    } else if (key == "mode") {
      if (value == "exhaustive") sp.mode = GraphSpace::Mode::Exhaustive;
      else if (value == "random") sp.mode = GraphSpace::Mode::Random;
      else throw Error("unknown mode in --space: " + value);
    } else if (key == "samples") {
      sp.samples = parse_u64(value, key);
    } else if (key == "seed") {
      sp.seed = parse_u64(value, key);
    } else {
      throw Error("unknown key in --space: " + key);
    }
  }
  if (sp.mode == GraphSpace::Mode::Random && sp.samples == 0)
    throw Error("--space mode=random needs samples=N");
  return sp;
}

std::string semantics_name(Semantics s) {
  return s == Semantics::Bag ? "bag" : "set";
}

void print_graph_block(std::ostream& out, const Graph& g) {
  if (g.empty()) {
    out << "(empty graph)\n";
    return;
  }
  out << print_graph(g);
}

int run_eval(const std::string& pattern_path, const std::string& graph_path,
             const std::string& dataset_path, bool set_semantics,
             bool diff_error_as_false, std::ostream& out) {
  PatternPtr p = load_pattern(pattern_path);
  Dataset ds;
  if (!graph_path.empty()) ds.default_graph = parse_graph(read_file(graph_path));
  else if (!dataset_path.empty()) ds = parse_dataset(read_file(dataset_path));
  ds = with_reserved_graphs(*p, std::move(ds));
  EvalContext ctx = EvalContext::for_dataset(std::move(ds));
  ctx.error_as_false = diff_error_as_false;
  MappingMultiset result =
      set_semantics ? eval_set_semantics(*p, ctx) : eval_pattern(*p, ctx);
  out << solutions_to_json(result) << "\n";
  return 0;
}

int run_rewrite(const std::string& rule, const std::string& pattern_path,
                std::ostream& out, std::ostream& err) {
  PatternPtr p = load_pattern(pattern_path);
  RewriteResult res;
  if (rule == "opt2diff") {
    res = rewrite_opt_to_diff(p);
  } else if (rule == "minus2diff") {
    res = rewrite_minus_to_diff(p);
  } else if (rule == "nex2diff") {
    res = rewrite_nex_to_diff(p);
  } else if (rule == "w3c2core") {
    res = normalize_to_diff(p);
  } else if (rule.rfind("naf:", 0) == 0) {
    if (p->kind != Pattern::Kind::Diff)
      throw Error("rule '" + rule +
                  "' expects a pattern of the form (diff P1 P2)");
    std::string scheme_name = rule.substr(4);
    NafScheme scheme;
    if (scheme_name == "naive") scheme = NafScheme::Naive;
    else if (scheme_name == "perez") scheme = NafScheme::Perez;
    else if (scheme_name == "polleres") scheme = NafScheme::Polleres;
    else if (scheme_name == "polleres-as-printed")
      scheme = NafScheme::PolleresAsPrinted;
    else throw Error("unknown rewrite rule: " + rule);
    res = encode_naf(p->lhs, p->rhs, scheme);
  } else {
    throw Error("unknown rewrite rule: " + rule);
  }

  if (res.applicability == Applicability::Rejected) {
    err << "rejected: " << res.reason << "\n";
    return 3;
  }
  out << print_pattern(*res.output) << "\n";
  if (res.applicability == Applicability::Inapplicable)
    err << "note: rule '" << rule << "' made no changes\n";
  if (!res.fresh_vars.empty()) {
    err << "note: fresh variables:";
    for (const std::string& v : res.fresh_vars) err << " " << v;
    err << "\n";
  }
  return 0;
}

int run_equiv(const std::string& p1_path, const std::string& p2_path,
              const std::string& space_text, bool set_semantics,
              std::ostream& out) {
  PatternPtr p1 = load_pattern(p1_path);
  PatternPtr p2 = load_pattern(p2_path);
  GraphSpace space = parse_space(space_text);
  Semantics sem = set_semantics ? Semantics::Set : Semantics::Bag;
  EquivalenceReport rep = check_equiv(p1, p2, space, sem);
  out << "semantics: " << semantics_name(rep.semantics) << "\n";
  out << "graphs-checked: " << rep.graphs_checked << "\n";
  out << "equivalent: " << (rep.equivalent ? "yes" : "no") << "\n";
  if (!rep.equivalent) {
    out << "witness-graph:\n";
    print_graph_block(out, rep.witness_graph);
    out << "lhs: " << render_multiset(rep.lhs) << "\n";
    out << "rhs: " << render_multiset(rep.rhs) << "\n";
  }
  return rep.equivalent ? 0 : 1;
}

int run_axioms(const std::string& op_name, const std::string& sem_name,
               bool json, std::ostream& out) {
  NegOp op = op_name == "diff" ? NegOp::Diff : NegOp::Minus;
  Semantics sem = sem_name == "set" ? Semantics::Set : Semantics::Bag;
  std::vector<AxiomCase> cases = run_axiom_matrix(op, sem);

  std::map<char, std::vector<const AxiomCase*>> by_axiom;
  for (const AxiomCase& c : cases) by_axiom[c.axiom].push_back(&c);

  std::size_t total_failures = 0;
  if (json) {
    nlohmann::json doc;
    doc["operator"] = op_name;
    doc["semantics"] = semantics_name(sem);
    doc["axioms"] = nlohmann::json::array();
    for (const auto& [axiom, group] : by_axiom) {
      nlohmann::json entry;
      entry["axiom"] = std::string(1, axiom);
      entry["cases"] = group.size();
      entry["note"] = published_axiom_note(axiom, op);
      entry["failing"] = nlohmann::json::array();
      for (const AxiomCase* c : group) {
        if (c->holds) continue;
        nlohmann::json f;
        f["slots"] = c->slots;
        f["lhs"] = render_multiset(c->lhs);
        f["rhs"] = render_multiset(c->rhs);
        entry["failing"].push_back(std::move(f));
      }
      entry["failures"] = entry["failing"].size();
      total_failures += entry["failing"].size();
      doc["axioms"].push_back(std::move(entry));
    }
    doc["total_cases"] = cases.size();
    doc["total_failures"] = total_failures;
    out << doc.dump(2) << "\n";
    return 0;
  }

  out << "operator: " << op_name << "\n";
  out << "semantics: " << semantics_name(sem) << "\n";
  for (const auto& [axiom, group] : by_axiom) {
    std::size_t failures = 0;
    for (const AxiomCase* c : group)
      if (!c->holds) ++failures;
    total_failures += failures;
    out << "axiom (" << axiom << "): cases=" << group.size()
        << " failures=" << failures << "\n";
    std::string note = published_axiom_note(axiom, op);
    if (!note.empty()) out << "  " << note << "\n";
    for (const AxiomCase* c : group) {
      if (c->holds) continue;
      out << "  fail [";
      for (std::size_t i = 0; i < c->slots.size(); ++i) {
        if (i) out << ",";
        out << c->slots[i];
      }
      out << "]: lhs=" << render_multiset(c->lhs)
          << " rhs=" << render_multiset(c->rhs) << "\n";
    }
  }
  out << "total: cases=" << cases.size() << " failures=" << total_failures
      << "\n";
  return 0;
}

int run_table2(bool json, std::ostream& out) {
  std::vector<Table2Row> rows = sparqlneg::run_table2();
  if (json) {
    nlohmann::json doc;
    doc["rows"] = nlohmann::json::array();
    for (const Table2Row& r : rows) {
      nlohmann::json entry;
      entry["row"] = r.row;
      entry["g0"] = r.g0_empty ? "empty" : "nonempty";
      entry["p1"] = r.p1_shape;
      entry["p2"] = r.p2_shape;
      entry["populated"] = r.populated;
      if (r.populated) {
        entry["diff"] = render_multiset(r.diff);
        entry["p3"] = render_multiset(r.p3);
        entry["p4"] = render_multiset(r.p4);
        entry["p3_agrees"] = r.p3_agrees;
        entry["p4_agrees"] = r.p4_agrees;
      }
      doc["rows"].push_back(std::move(entry));
    }
    out << doc.dump(2) << "\n";
    return 0;
  }
  for (const Table2Row& r : rows) {
    out << "row " << r.row << " g0=" << (r.g0_empty ? "empty" : "nonempty")
        << " p1=" << r.p1_shape << " p2=" << r.p2_shape;
    if (!r.populated) {
      out << " --\n";
      continue;
    }
    out << " diff=" << render_multiset(r.diff) << " p3="
        << render_multiset(r.p3) << (r.p3_agrees ? " (agrees)" : " (DIFFERS)")
        << " p4=" << render_multiset(r.p4)
        << (r.p4_agrees ? " (agrees)" : " (DIFFERS)") << "\n";
  }
  return 0;
}

int run_fragment(const std::string& pattern_path, std::ostream& out) {
  PatternPtr p = load_pattern(pattern_path);
  FragmentReport rep = in_fragment_ex(*p);
  out << "in-fragment: " << (rep.in_fragment ? "yes" : "no") << "\n";
  for (const FragmentViolation& v : rep.violations)
    out << "violation: " << v.variable << " at " << v.path << "\n";
  return rep.in_fragment ? 0 : 1;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"executable semantics laboratory for SPARQL negation"};
  app.require_subcommand(1);

  std::string eval_pattern_path, eval_graph_path, eval_dataset_path;
  bool eval_set = false;
  bool eval_error_as_false = true;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "evaluate a pattern over a graph or dataset");
  eval_cmd->add_option("--pattern", eval_pattern_path, "pattern file")
      ->required();
  CLI::Option* eval_graph_opt =
      eval_cmd->add_option("--graph", eval_graph_path, "default graph file");
  eval_cmd->add_option("--dataset", eval_dataset_path, "dataset file")
      ->excludes(eval_graph_opt);
  eval_cmd->add_flag("--set", eval_set, "collapse cardinalities to 1");
  eval_cmd->add_option("--diff-error-as-false", eval_error_as_false,
                       "treat filter errors in DIFF as false (default true)");

  std::string rewrite_rule, rewrite_pattern_path;
  CLI::App* rewrite_cmd =
      app.add_subcommand("rewrite", "apply a negation rewrite rule");
  rewrite_cmd
      ->add_option("--rule", rewrite_rule,
                   "opt2diff|minus2diff|nex2diff|w3c2core|naf:naive|naf:perez|"
                   "naf:polleres|naf:polleres-as-printed")
      ->required();
  rewrite_cmd->add_option("--pattern", rewrite_pattern_path, "pattern file")
      ->required();

  std::string equiv_p1, equiv_p2, equiv_space;
  bool equiv_set = false;
  CLI::App* equiv_cmd = app.add_subcommand(
      "equiv", "check pattern equivalence over a finite graph space");
  equiv_cmd->add_option("p1", equiv_p1, "first pattern file")->required();
  equiv_cmd->add_option("p2", equiv_p2, "second pattern file")->required();
  equiv_cmd->add_option("--space", equiv_space,
                        "graph space, e.g. s=a,b;p=p,q;o=a,b;max=8");
  equiv_cmd->add_flag("--set", equiv_set, "compare under set semantics");

  std::string axioms_op, axioms_sem = "bag";
  bool axioms_json = false;
  CLI::App* axioms_cmd = app.add_subcommand(
      "axioms", "run the set-difference axiom matrix over the fixtures");
  axioms_cmd->add_option("--operator", axioms_op, "diff|minus")
      ->required()
      ->check(CLI::IsMember({"diff", "minus"}));
  axioms_cmd->add_option("--semantics", axioms_sem, "bag|set")
      ->check(CLI::IsMember({"bag", "set"}));
  axioms_cmd->add_flag("--json", axioms_json, "emit JSON");

  bool table2_json = false;
  CLI::App* table2_cmd = app.add_subcommand(
      "table2", "compare DIFF with the NAF encodings on the corner cases");
  table2_cmd->add_flag("--json", table2_json, "emit JSON");

  std::string fragment_pattern_path;
  CLI::App* fragment_cmd = app.add_subcommand(
      "fragment", "check membership in the safe NOT-EXISTS fragment");
  fragment_cmd->add_option("--pattern", fragment_pattern_path, "pattern file")
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (eval_cmd->parsed())
      return run_eval(eval_pattern_path, eval_graph_path, eval_dataset_path,
                      eval_set, eval_error_as_false, out);
    if (rewrite_cmd->parsed())
      return run_rewrite(rewrite_rule, rewrite_pattern_path, out, err);
    if (equiv_cmd->parsed())
      return run_equiv(equiv_p1, equiv_p2, equiv_space, equiv_set, out);
    if (axioms_cmd->parsed())
      return run_axioms(axioms_op, axioms_sem, axioms_json, out);
    if (table2_cmd->parsed()) return run_table2(table2_json, out);
    if (fragment_cmd->parsed()) return run_fragment(fragment_pattern_path, out);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "usage error: no subcommand given\n";
  return 2;
}

}  // namespace sparqlneg
