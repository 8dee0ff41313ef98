#include "sparqlneg/text.hpp"

#include <sstream>
#include <vector>

#include "json.hpp"

namespace sparqlneg {

namespace {
std::string format_diagnostic(const ParseDiagnostic& d) {
  std::string out = "parse error at line " + std::to_string(d.line) +
                    ", column " + std::to_string(d.column) + ": " + d.message;
  if (!d.snippet.empty()) out += "\n  " + d.snippet;
  return out;
}
}  // namespace

ParseError::ParseError(ParseDiagnostic d)
    : Error(format_diagnostic(d)), diagnostic(std::move(d)) {}

namespace {

struct Token {
  enum class Kind {
    LParen,
    RParen,
    LBrace,
    RBrace,
    Dot,
    Word,     // bare keyword such as triple, and, =, DEFAULT
    Iri,      // :name or <absolute>
    Variable, // ?name
    Literal,  // "value" (text holds the unquoted value)
    End
  };
  Kind kind = Kind::End;
  std::string text;
  int line = 1, column = 1;
};

bool word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '=';
}

struct Tokenizer {
  std::vector<std::string> lines;
  std::vector<Token> tokens;

  explicit Tokenizer(const std::string& src) {
    std::string current;
    for (char c : src) {
      if (c == '\n') {
        lines.push_back(current);
        current.clear();
      } else {
        current.push_back(c);
      }
    }
    lines.push_back(current);
    lex(src);
  }

  [[noreturn]] void fail(int line, int column, const std::string& msg) const {
    ParseDiagnostic d;
    d.line = line;
    d.column = column;
    d.message = msg;
    if (line >= 1 && static_cast<std::size_t>(line) <= lines.size())
      d.snippet = lines[line - 1];
    throw ParseError(std::move(d));
  }

  void lex(const std::string& src) {
    int line = 1, column = 1;
    std::size_t i = 0;
    auto advance = [&](char c) {
      if (c == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    };
    while (i < src.size()) {
      char c = src[i];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(c);
        ++i;
        continue;
      }
      if (c == '#') {  // comment to end of line
        while (i < src.size() && src[i] != '\n') {
          advance(src[i]);
          ++i;
        }
        continue;
      }
      int tl = line, tc = column;
      auto push = [&](Token::Kind k, std::string text) {
        tokens.push_back(Token{k, std::move(text), tl, tc});
      };
      if (c == '(') { push(Token::Kind::LParen, "("); advance(c); ++i; continue; }
      if (c == ')') { push(Token::Kind::RParen, ")"); advance(c); ++i; continue; }
      if (c == '{') { push(Token::Kind::LBrace, "{"); advance(c); ++i; continue; }
      if (c == '}') { push(Token::Kind::RBrace, "}"); advance(c); ++i; continue; }
      if (c == '.') { push(Token::Kind::Dot, "."); advance(c); ++i; continue; }
      if (c == '_' && i + 1 < src.size() && src[i + 1] == ':')
        fail(tl, tc, "blank nodes are not supported");
      if (c == '?') {
        std::string text(1, c);
        advance(c);
        ++i;
        while (i < src.size() && (word_char(src[i]) && src[i] != '=')) {
          text.push_back(src[i]);
          advance(src[i]);
          ++i;
        }
        if (text.size() < 2) fail(tl, tc, "expected a variable name after '?'");
        push(Token::Kind::Variable, std::move(text));
        continue;
      }
      if (c == ':') {
        std::string text(1, c);
        advance(c);
        ++i;
        while (i < src.size() && (word_char(src[i]) && src[i] != '=')) {
          text.push_back(src[i]);
          advance(src[i]);
          ++i;
        }
        if (text.size() < 2) fail(tl, tc, "expected an iri name after ':'");
        push(Token::Kind::Iri, std::move(text));
        continue;
      }
      if (c == '<') {
        std::string text(1, c);
        advance(c);
        ++i;
        bool closed = false;
        while (i < src.size() && src[i] != '\n') {
          char d = src[i];
          text.push_back(d);
          advance(d);
          ++i;
          if (d == '>') {
            closed = true;
            break;
          }
        }
        if (!closed) fail(tl, tc, "unterminated '<...>' iri");
        push(Token::Kind::Iri, std::move(text));
        continue;
      }
      if (c == '"') {
        advance(c);
        ++i;
        std::string value;
        bool closed = false;
        while (i < src.size() && src[i] != '\n') {
          char d = src[i];
          if (d == '\\') {
            if (i + 1 >= src.size())
              fail(tl, tc, "unterminated string literal");
            char e = src[i + 1];
            if (e != '"' && e != '\\')
              fail(tl, tc, std::string("unsupported escape '\\") + e + "'");
            value.push_back(e);
            advance(d);
            advance(e);
            i += 2;
            continue;
          }
          advance(d);
          ++i;
          if (d == '"') {
            closed = true;
            break;
          }
          value.push_back(d);
        }
        if (!closed) fail(tl, tc, "unterminated string literal");
        push(Token::Kind::Literal, std::move(value));
        continue;
      }
      if (word_char(c)) {
        std::string text;
        while (i < src.size() && word_char(src[i])) {
          text.push_back(src[i]);
          advance(src[i]);
          ++i;
        }
        push(Token::Kind::Word, std::move(text));
        continue;
      }
      fail(tl, tc, std::string("unexpected character '") + c + "'");
    }
    tokens.push_back(Token{Token::Kind::End, "", line, column});
  }
};

struct Cursor {
  const Tokenizer& tz;
  std::size_t at = 0;

  const Token& peek() const { return tz.tokens[at]; }
  const Token& take() { return tz.tokens[at++]; }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    tz.fail(t.line, t.column, msg);
  }
  const Token& expect(Token::Kind k, const std::string& what) {
    const Token& t = peek();
    if (t.kind != k) fail(t, "expected " + what);
    return take();
  }
};

Term ground_term_from(Cursor& cur, const char* position) {
  const Token& t = cur.take();
  switch (t.kind) {
    case Token::Kind::Iri:
      return iri(t.text);
    case Token::Kind::Literal:
      return literal(t.text);
    case Token::Kind::Variable:
      cur.fail(t, std::string("variables are not allowed in ground graphs (") +
                      position + ")");
    default:
      cur.fail(t, std::string("expected a term for the ") + position);
  }
}

Triple parse_ground_triple(Cursor& cur) {
  const Token& first = cur.peek();
  Term s = ground_term_from(cur, "subject");
  Term p = ground_term_from(cur, "predicate");
  Term o = ground_term_from(cur, "object");
  cur.expect(Token::Kind::Dot, "'.' after the triple");
  if (!s.is_iri()) cur.fail(first, "triple subject must be an iri");
  if (!p.is_iri()) cur.fail(first, "triple predicate must be an iri");
  return make_triple(std::move(s), std::move(p), std::move(o));
}

bool triple_starts(const Token& t) {
  return t.kind == Token::Kind::Iri || t.kind == Token::Kind::Literal ||
         t.kind == Token::Kind::Variable;
}

std::string variable_from(Cursor& cur, const ParseOptions& opts) {
  const Token& t = cur.peek();
  if (t.kind != Token::Kind::Variable) cur.fail(t, "expected a variable");
  if (!opts.allow_reserved_vars &&
      t.text.rfind(kReservedVarPrefix, 0) == 0)
    cur.fail(t, "variable uses the reserved prefix '?__': " + t.text);
  return cur.take().text;
}

Term pattern_term_from(Cursor& cur, const ParseOptions& opts) {
  const Token& t = cur.peek();
  switch (t.kind) {
    case Token::Kind::Iri:
      return iri(cur.take().text);
    case Token::Kind::Literal:
      return literal(cur.take().text);
    case Token::Kind::Variable:
      return variable(variable_from(cur, opts));
    default:
      cur.fail(t, "expected an iri, literal or variable");
  }
}

FormulaPtr parse_formula_expr(Cursor& cur, const ParseOptions& opts) {
  const Token& t = cur.peek();
  if (t.kind == Token::Kind::Word) {
    if (t.text == "true") {
      cur.take();
      return f_true();
    }
    if (t.text == "false") {
      cur.take();
      return f_false();
    }
    cur.fail(t, "expected a formula, got '" + t.text + "'");
  }
  cur.expect(Token::Kind::LParen, "'(' to open a formula");
  const Token& head = cur.peek();
  if (head.kind != Token::Kind::Word)
    cur.fail(head, "expected a formula head (=, bound, not, and, or)");
  std::string h = cur.take().text;
  FormulaPtr out;
  if (h == "=") {
    const Token& a = cur.peek();
    if (a.kind == Token::Kind::Variable) {
      std::string v1 = variable_from(cur, opts);
      const Token& b = cur.peek();
      if (b.kind == Token::Kind::Variable)
        out = f_eq_vars(v1, variable_from(cur, opts));
      else
        out = f_eq(v1, pattern_term_from(cur, opts));
    } else {
      Term t1 = pattern_term_from(cur, opts);
      const Token& b = cur.peek();
      if (b.kind == Token::Kind::Variable)
        out = f_eq(variable_from(cur, opts), t1);  // symmetric: var stays left
      else
        out = f_eq_terms(t1, pattern_term_from(cur, opts));
    }
  } else if (h == "bound") {
    out = f_bound(variable_from(cur, opts));
  } else if (h == "not") {
    out = f_not(parse_formula_expr(cur, opts));
  } else if (h == "and") {
    FormulaPtr a = parse_formula_expr(cur, opts);
    out = f_and(a, parse_formula_expr(cur, opts));
  } else if (h == "or") {
    FormulaPtr a = parse_formula_expr(cur, opts);
    out = f_or(a, parse_formula_expr(cur, opts));
  } else {
    cur.fail(head, "unknown formula head '" + h + "'");
  }
  cur.expect(Token::Kind::RParen, "')' to close the formula");
  return out;
}

PatternPtr parse_pattern_expr(Cursor& cur, const ParseOptions& opts) {
  const Token& open = cur.peek();
  cur.expect(Token::Kind::LParen, "'(' to open a pattern");
  const Token& head = cur.peek();
  if (head.kind != Token::Kind::Word)
    cur.fail(head, "expected a pattern head");
  std::string h = cur.take().text;
  PatternPtr out;
  if (h == "triple") {
    Term s = pattern_term_from(cur, opts);
    Term p = pattern_term_from(cur, opts);
    Term o = pattern_term_from(cur, opts);
    try {
      out = p_triple(std::move(s), std::move(p), std::move(o));
    } catch (const Error& e) {
      cur.fail(open, e.what());
    }
  } else if (h == "and" || h == "union" || h == "opt" || h == "minus" ||
             h == "not-exists" || h == "diff") {
    PatternPtr l = parse_pattern_expr(cur, opts);
    PatternPtr r = parse_pattern_expr(cur, opts);
    if (h == "and") out = p_and(l, r);
    else if (h == "union") out = p_union(l, r);
    else if (h == "opt") out = p_opt(l, r);
    else if (h == "minus") out = p_minus(l, r);
    else if (h == "not-exists") out = p_not_exists(l, r);
    else out = p_diff(l, r);
  } else if (h == "filter") {
    PatternPtr p = parse_pattern_expr(cur, opts);
    FormulaPtr c = parse_formula_expr(cur, opts);
    out = p_filter(p, c);
  } else if (h == "graph") {
    const Token& nt = cur.peek();
    Term name;
    if (nt.kind == Token::Kind::Variable)
      name = variable(variable_from(cur, opts));
    else if (nt.kind == Token::Kind::Iri)
      name = iri(cur.take().text);
    else
      cur.fail(nt, "expected an iri or variable graph name");
    out = p_graph(std::move(name), parse_pattern_expr(cur, opts));
  } else if (h == "unit") {
    out = p_unit();
  } else {
    cur.fail(head, "unknown pattern head '" + h + "'");
  }
  cur.expect(Token::Kind::RParen, "')' to close the pattern");
  return out;
}

}  // namespace

Graph parse_graph(const std::string& text) {
  Tokenizer tz(text);
  Cursor cur{tz};
  Graph g;
  while (cur.peek().kind != Token::Kind::End) {
    if (!triple_starts(cur.peek()))
      cur.fail(cur.peek(), "expected a triple line '<s> <p> <o> .'");
    g.add(parse_ground_triple(cur));
  }
  return g;
}

Dataset parse_dataset(const std::string& text) {
  Tokenizer tz(text);
  Cursor cur{tz};
  Dataset ds;
  auto parse_block = [&cur](Graph& g) {
    cur.expect(Token::Kind::LBrace, "'{' to open the block");
    while (cur.peek().kind != Token::Kind::RBrace) {
      if (!triple_starts(cur.peek()))
        cur.fail(cur.peek(), "expected a triple line or '}'");
      g.add(parse_ground_triple(cur));
    }
    cur.expect(Token::Kind::RBrace, "'}' to close the block");
  };
  if (cur.peek().kind == Token::Kind::Word && cur.peek().text == "DEFAULT") {
    cur.take();
    parse_block(ds.default_graph);
  }
  while (cur.peek().kind != Token::Kind::End) {
    const Token& t = cur.peek();
    if (t.kind != Token::Kind::Word || t.text != "GRAPH")
      cur.fail(t, "expected 'GRAPH :name { ... }'");
    cur.take();
    const Token& nt = cur.peek();
    if (nt.kind != Token::Kind::Iri)
      cur.fail(nt, "expected an iri graph name after GRAPH");
    Term name = iri(cur.take().text);
    if (ds.named.count(name))
      cur.fail(nt, "duplicate graph name " + name.lexical);
    Graph g;
    parse_block(g);
    ds.named.emplace(std::move(name), std::move(g));
  }
  return ds;
}

PatternPtr parse_pattern(const std::string& text, const ParseOptions& opts) {
  Tokenizer tz(text);
  Cursor cur{tz};
  PatternPtr p = parse_pattern_expr(cur, opts);
  const Token& t = cur.peek();
  if (t.kind != Token::Kind::End)
    cur.fail(t, "unexpected trailing input after the pattern");
  return p;
}

FormulaPtr parse_formula(const std::string& text, const ParseOptions& opts) {
  Tokenizer tz(text);
  Cursor cur{tz};
  FormulaPtr f = parse_formula_expr(cur, opts);
  const Token& t = cur.peek();
  if (t.kind != Token::Kind::End)
    cur.fail(t, "unexpected trailing input after the formula");
  return f;
}

std::string print_term(const Term& t) {
  if (t.is_literal()) {
    std::string out = "\"";
    for (char c : t.lexical) {
      if (c == '"' || c == '\\') out.push_back('\\');
      out.push_back(c);
    }
    out += "\"";
    return out;
  }
  return t.lexical;
}

std::string print_formula(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::EqVarTerm:
      return "(= " + f.var1 + " " + print_term(f.term1) + ")";
    case Formula::Kind::EqVarVar:
      return "(= " + f.var1 + " " + f.var2 + ")";
    case Formula::Kind::EqTermTerm:
      return "(= " + print_term(f.term1) + " " + print_term(f.term2) + ")";
    case Formula::Kind::Bound:
      return "(bound " + f.var1 + ")";
    case Formula::Kind::True:
      return "true";
    case Formula::Kind::False:
      return "false";
    case Formula::Kind::Not:
      return "(not " + print_formula(*f.lhs) + ")";
    case Formula::Kind::And:
      return "(and " + print_formula(*f.lhs) + " " + print_formula(*f.rhs) +
             ")";
    case Formula::Kind::Or:
      return "(or " + print_formula(*f.lhs) + " " + print_formula(*f.rhs) +
             ")";
  }
  throw Error("unreachable formula kind");
}

std::string print_pattern(const Pattern& p) {
  switch (p.kind) {
    case Pattern::Kind::Triple:
      return "(triple " + print_term(p.triple.s) + " " +
             print_term(p.triple.p) + " " + print_term(p.triple.o) + ")";
    case Pattern::Kind::And:
      return "(and " + print_pattern(*p.lhs) + " " + print_pattern(*p.rhs) +
             ")";
    case Pattern::Kind::Union:
      return "(union " + print_pattern(*p.lhs) + " " + print_pattern(*p.rhs) +
             ")";
    case Pattern::Kind::Opt:
      return "(opt " + print_pattern(*p.lhs) + " " + print_pattern(*p.rhs) +
             ")";
    case Pattern::Kind::Minus:
      return "(minus " + print_pattern(*p.lhs) + " " + print_pattern(*p.rhs) +
             ")";
    case Pattern::Kind::NotExists:
      return "(not-exists " + print_pattern(*p.lhs) + " " +
             print_pattern(*p.rhs) + ")";
    case Pattern::Kind::Diff:
      return "(diff " + print_pattern(*p.lhs) + " " + print_pattern(*p.rhs) +
             ")";
    case Pattern::Kind::Filter:
      return "(filter " + print_pattern(*p.lhs) + " " +
             print_formula(*p.constraint) + ")";
    case Pattern::Kind::Graph:
      return "(graph " + print_term(p.graph_name) + " " +
             print_pattern(*p.lhs) + ")";
    case Pattern::Kind::Unit:
      return "(unit)";
  }
  throw Error("unreachable pattern kind");
}

std::string print_graph(const Graph& g) {
  std::string out;
  for (const Triple& t : g.triples)
    out += print_term(t.s) + " " + print_term(t.p) + " " + print_term(t.o) +
           " .\n";
  return out;
}

std::string solutions_to_json(const MappingMultiset& o) {
  nlohmann::json doc;
  doc["solutions"] = nlohmann::json::array();
  for (const auto& [m, c] : o.entries()) {
    nlohmann::json entry;
    entry["bindings"] = nlohmann::json::object();
    for (const auto& [v, t] : m.bindings) entry["bindings"][v] = print_term(t);
    entry["card"] = c;
    doc["solutions"].push_back(std::move(entry));
  }
  return doc.dump(2);
}

}  // namespace sparqlneg
