#include "sparqlneg/model.hpp"

namespace sparqlneg {

Term iri(std::string lexical) {
  if (lexical.empty()) throw Error("invalid iri: empty lexical form");
  if (lexical[0] != ':' && lexical[0] != '<')
    throw Error("invalid iri: expected ':name' or '<absolute>' form, got '" +
                lexical + "'");
  return Term{TermKind::Iri, std::move(lexical)};
}

Term literal(std::string value) {
  return Term{TermKind::Literal, std::move(value)};
}

Term variable(std::string name) {
  if (name.size() < 2 || name[0] != '?')
    throw Error("invalid variable: expected '?name', got '" + name + "'");
  return Term{TermKind::Variable, std::move(name)};
}

Triple make_triple(Term s, Term p, Term o) {
  if (!s.is_iri())
    throw Error("invalid triple: subject must be an iri, got '" + s.lexical +
                "'");
  if (!p.is_iri())
    throw Error("invalid triple: predicate must be an iri, got '" + p.lexical +
                "'");
  if (!o.is_iri() && !o.is_literal())
    throw Error("invalid triple: object must be an iri or literal, got '" +
                o.lexical + "'");
  return Triple{std::move(s), std::move(p), std::move(o)};
}

Graph graph_union(const Graph& g1, const Graph& g2) {
  Graph out = g1;
  out.triples.insert(g2.triples.begin(), g2.triples.end());
  return out;
}

bool dataset_has(const Dataset& d, const Term& name) {
  return d.named.count(name) > 0;
}

const Graph& dataset_lookup(const Dataset& d, const Term& name) {
  auto it = d.named.find(name);
  if (it == d.named.end())
    throw Error("unknown-graph-name: " + name.lexical);
  return it->second;
}

}  // namespace sparqlneg
