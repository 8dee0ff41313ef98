#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sparqlneg/cli.hpp"

using namespace sparqlneg;

namespace {

std::filesystem::path tmp_dir() {
  auto d = std::filesystem::temp_directory_path() / "sparqlneg_cli_tests";
  std::filesystem::create_directories(d);
  return d;
}

std::string write_file(const std::string& name, const std::string& content) {
  auto p = tmp_dir() / name;
  std::ofstream out(p);
  out << content;
  return p.string();
}

struct CliRun {
  int code = 0;
  std::string out, err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  CliRun r;
  r.code = cli_main(args, o, e);
  r.out = o.str();
  r.err = e.str();
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("eval prints canonical solution json") {
  std::string g = write_file("g.graph", ":a :p :b .\n:f :p :b .\n");
  std::string p = write_file("p.pat", "(triple ?X :p :b)");

  CliRun r = run_cli({"eval", "--graph", g, "--pattern", p});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "{\n"
        "  \"solutions\": [\n"
        "    {\n"
        "      \"bindings\": {\n"
        "        \"?X\": \":a\"\n"
        "      },\n"
        "      \"card\": 1\n"
        "    },\n"
        "    {\n"
        "      \"bindings\": {\n"
        "        \"?X\": \":f\"\n"
        "      },\n"
        "      \"card\": 1\n"
        "    }\n"
        "  ]\n"
        "}\n");
  CHECK(r.err.empty());

  // identical invocations produce byte-identical output
  CliRun again = run_cli({"eval", "--graph", g, "--pattern", p});
  CHECK(again.out == r.out);
}

TEST_CASE("eval collapses cardinalities under --set") {
  std::string g = write_file("set.graph", ":a :p :b .\n");
  std::string p =
      write_file("set.pat", "(union (triple ?X :p :b) (triple ?X :p :b))");

  CliRun bag = run_cli({"eval", "--graph", g, "--pattern", p});
  CHECK(contains(bag.out, "\"card\": 2"));

  CliRun set = run_cli({"eval", "--graph", g, "--pattern", p, "--set"});
  CHECK(contains(set.out, "\"card\": 1"));
}

TEST_CASE("eval reads datasets with named graphs") {
  std::string d = write_file("d.dataset",
                             "DEFAULT { :a :p :b . }\n"
                             "GRAPH :g1 { :f :p :b . }\n");
  std::string p = write_file("d.pat", "(graph :g1 (triple ?X :p :b))");

  CliRun r = run_cli({"eval", "--dataset", d, "--pattern", p});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "\"?X\": \":f\""));
}

TEST_CASE("eval reports missing files and parse errors on stderr") {
  std::string p = write_file("ok.pat", "(unit)");
  CliRun missing = run_cli({"eval", "--graph", "/nonexistent/x.graph",
                            "--pattern", p});
  CHECK(missing.code == 2);
  CHECK(contains(missing.err, "cannot read file"));

  std::string bad = write_file("bad.pat", "(triple :a :p :b)");
  std::string g = write_file("ok.graph", "");
  CliRun parse = run_cli({"eval", "--graph", g, "--pattern", bad});
  CHECK(parse.code == 2);
  CHECK(contains(parse.err, "parse error at line 1"));
  CHECK(parse.out.empty());
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"eval"}).code == 2);  // --pattern is required

  std::string p = write_file("u.pat", "(unit)");
  std::string g = write_file("u.graph", "");
  std::string d = write_file("u.dataset", "");
  CliRun both = run_cli({"eval", "--graph", g, "--dataset", d,
                         "--pattern", p});
  CHECK(both.code == 2);  // the two sources exclude each other

  CliRun help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(contains(help.out, "eval"));
}

TEST_CASE("rewrite applies rules and reports inapplicability") {
  std::string p =
      write_file("r.pat", "(opt (triple ?X :p ?Y) (triple ?Y :q ?Z))");
  CliRun r = run_cli({"rewrite", "--rule", "opt2diff", "--pattern", p});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "(union (and (triple ?X :p ?Y) (triple ?Y :q ?Z)) "
        "(diff (triple ?X :p ?Y) "
        "(and (triple ?X :p ?Y) (triple ?Y :q ?Z))))\n");
  CHECK(r.err.empty());

  std::string noop = write_file("noop.pat", "(triple ?X :p ?Y)");
  CliRun n = run_cli({"rewrite", "--rule", "opt2diff", "--pattern", noop});
  CHECK(n.code == 0);
  CHECK(n.out == "(triple ?X :p ?Y)\n");
  CHECK(contains(n.err, "made no changes"));
}

TEST_CASE("rewrite surfaces fresh variables and round-trips through eval") {
  std::string p = write_file(
      "m.pat", "(minus (triple ?X :p ?Y) (triple ?X :q ?Z))");
  CliRun r = run_cli({"rewrite", "--rule", "minus2diff", "--pattern", p});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "?__v1"));
  CHECK(contains(r.err, "note: fresh variables: ?__v1"));

  // the emitted pattern (with reserved variables) feeds back into eval
  std::string again = write_file("m_out.pat", r.out);
  std::string g = write_file("m.graph", ":a :p :b .\n");
  CliRun ev = run_cli({"eval", "--graph", g, "--pattern", again});
  CHECK(ev.code == 0);
  CHECK(contains(ev.out, "\"?X\": \":a\""));
}

TEST_CASE("rewrite rejections exit with code 3") {
  std::string p = write_file(
      "rej.pat",
      "(not-exists (triple ?X :p :b) "
      "(not-exists (triple ?Z :q :d) (triple ?W :r ?X)))");
  CliRun r = run_cli({"rewrite", "--rule", "nex2diff", "--pattern", p});
  CHECK(r.code == 3);
  CHECK(r.out.empty());
  CHECK(contains(r.err, "rejected:"));
  CHECK(contains(r.err, "?X"));

  CliRun w = run_cli({"rewrite", "--rule", "w3c2core", "--pattern", p});
  CHECK(w.code == 3);
}

TEST_CASE("naf rules need a diff-rooted input") {
  std::string p = write_file(
      "naf.pat", "(diff (triple ?X :p :b) (triple ?X :q ?Z))");
  CliRun r = run_cli({"rewrite", "--rule", "naf:naive", "--pattern", p});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "(filter (opt (triple ?X :p :b) (triple ?X :q ?Z)) "
        "(not (bound ?Z)))\n");

  CliRun pol = run_cli({"rewrite", "--rule", "naf:polleres", "--pattern", p});
  CHECK(pol.code == 0);
  CHECK(contains(pol.out, "(graph :__naf"));

  std::string plain = write_file("plain.pat", "(triple ?X :p :b)");
  CliRun bad = run_cli({"rewrite", "--rule", "naf:naive",
                        "--pattern", plain});
  CHECK(bad.code == 2);
  CHECK(contains(bad.err, "(diff P1 P2)"));

  CliRun unknown = run_cli({"rewrite", "--rule", "naf:what", "--pattern", p});
  CHECK(unknown.code == 2);
}

TEST_CASE("equiv distinguishes equivalent and inequivalent patterns") {
  std::string a = write_file("eq_a.pat", "(triple ?X :p :b)");
  std::string b = write_file("eq_b.pat", "(triple ?X :p :b)");
  CliRun same = run_cli({"equiv", a, b});
  CHECK(same.code == 0);
  CHECK(contains(same.out, "equivalent: yes"));
  CHECK(contains(same.out, "graphs-checked: 256"));

  std::string m = write_file(
      "eq_m.pat", "(minus (triple ?X :p :b) (triple ?Y :p :b))");
  std::string d = write_file(
      "eq_d.pat", "(diff (triple ?X :p :b) (triple ?Y :p :b))");
  CliRun differ = run_cli({"equiv", m, d});
  CHECK(differ.code == 1);
  CHECK(contains(differ.out, "equivalent: no"));
  CHECK(contains(differ.out, "witness-graph:"));
  CHECK(contains(differ.out, "lhs: {{?X=:a}*1}"));
  CHECK(contains(differ.out, "rhs: {}"));

  // a narrower space without :p-:b triples cannot distinguish them
  CliRun narrow = run_cli({"equiv", m, d, "--space", "s=a;p=q;o=a;max=4"});
  CHECK(narrow.code == 0);
  CHECK(contains(narrow.out, "graphs-checked: 2"));

  CliRun bad_space = run_cli({"equiv", m, d, "--space", "zap=1"});
  CHECK(bad_space.code == 2);
}

TEST_CASE("axioms renders the matrix in text and json") {
  CliRun r = run_cli({"axioms", "--operator", "minus", "--semantics", "bag"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "operator: minus"));
  CHECK(contains(r.out, "axiom (e): cases=25 failures=4"));
  CHECK(contains(r.out, "fail [omega0,omega0]: lhs={{}*1} rhs={}"));
  CHECK(contains(r.out, "published claim"));

  CliRun j = run_cli({"axioms", "--operator", "diff", "--json"});
  CHECK(j.code == 0);
  CHECK(contains(j.out, "\"operator\": \"diff\""));
  CHECK(contains(j.out, "\"total_cases\": 500"));

  CliRun bad = run_cli({"axioms", "--operator", "nope"});
  CHECK(bad.code == 2);
}

TEST_CASE("table2 renders the corner-case comparison") {
  CliRun r = run_cli({"table2"});
  CHECK(r.code == 0);
  CHECK(contains(r.out,
                 "row 5 g0=empty p1=omega0 p2=omega0 diff={} p3={{}*1} "
                 "(DIFFERS) p4={} (agrees)"));
  CHECK(contains(r.out, "row 6 g0=empty p1=omega0 p2=omega2 --"));

  CliRun j = run_cli({"table2", "--json"});
  CHECK(j.code == 0);
  CHECK(contains(j.out, "\"p4_agrees\": true"));
}

TEST_CASE("fragment verdicts use exit codes 0 and 1") {
  std::string ok = write_file(
      "frag_ok.pat", "(not-exists (triple ?X :p :b) (triple ?X :q ?Z))");
  CliRun good = run_cli({"fragment", "--pattern", ok});
  CHECK(good.code == 0);
  CHECK(good.out == "in-fragment: yes\n");

  std::string bad = write_file(
      "frag_bad.pat",
      "(not-exists (triple ?X :p :b) "
      "(not-exists (triple ?Z :q :d) (triple ?W :r ?X)))");
  CliRun r = run_cli({"fragment", "--pattern", bad});
  CHECK(r.code == 1);
  CHECK(r.out ==
        "in-fragment: no\n"
        "violation: ?X at /\n");
}

TEST_CASE("user datasets may not define the reserved probe graph") {
  std::string d = write_file("naf.dataset", "GRAPH :__naf { :a :p :b . }\n");
  std::string p = write_file("naf_eval.pat", "(unit)");
  CliRun r = run_cli({"eval", "--dataset", d, "--pattern", p});
  CHECK(r.code == 2);
  CHECK(contains(r.err, ":__naf"));
}
