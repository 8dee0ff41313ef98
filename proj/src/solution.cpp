#include "sparqlneg/solution.hpp"

namespace sparqlneg {

const Term& Mapping::at(const std::string& var) const {
  auto it = bindings.find(var);
  if (it == bindings.end()) throw Error("unbound variable: " + var);
  return it->second;
}

std::set<std::string> Mapping::dom() const {
  std::set<std::string> out;
  for (const auto& [v, t] : bindings) out.insert(v);
  return out;
}

Mapping make_mapping(std::initializer_list<std::pair<std::string, Term>> bs) {
  Mapping m;
  for (const auto& [v, t] : bs) {
    if (v.size() < 2 || v[0] != '?')
      throw Error("invalid variable: expected '?name', got '" + v + "'");
    if (!t.is_ground())
      throw Error("mapping values must be ground terms: " + t.lexical);
    m.bindings[v] = t;
  }
  return m;
}

bool compatible(const Mapping& m1, const Mapping& m2) {
  const Mapping& small = m1.bindings.size() <= m2.bindings.size() ? m1 : m2;
  const Mapping& large = m1.bindings.size() <= m2.bindings.size() ? m2 : m1;
  for (const auto& [v, t] : small.bindings) {
    auto it = large.bindings.find(v);
    if (it != large.bindings.end() && !(it->second == t)) return false;
  }
  return true;
}

Mapping restrict_to(const Mapping& m, const std::set<std::string>& w) {
  Mapping out;
  for (const auto& [v, t] : m.bindings)
    if (w.count(v)) out.bindings.emplace(v, t);
  return out;
}

Mapping merge(const Mapping& m1, const Mapping& m2) {
  if (!compatible(m1, m2)) throw Error("incompatible-mappings");
  Mapping out = m1;
  out.bindings.insert(m2.bindings.begin(), m2.bindings.end());
  return out;
}

bool dom_disjoint(const Mapping& m1, const Mapping& m2) {
  const Mapping& small = m1.bindings.size() <= m2.bindings.size() ? m1 : m2;
  const Mapping& large = m1.bindings.size() <= m2.bindings.size() ? m2 : m1;
  for (const auto& [v, t] : small.bindings)
    if (large.bindings.count(v)) return false;
  return true;
}

MappingMultiset MappingMultiset::of(
    std::initializer_list<std::pair<Mapping, std::uint64_t>> entries) {
  MappingMultiset out;
  for (const auto& [m, c] : entries) out.add(m, c);
  return out;
}

void MappingMultiset::add(const Mapping& m, std::uint64_t n) {
  if (n == 0) return;
  entries_[m] += n;
}

std::uint64_t MappingMultiset::card(const Mapping& m) const {
  auto it = entries_.find(m);
  return it == entries_.end() ? 0 : it->second;
}

std::uint64_t MappingMultiset::total_card() const {
  std::uint64_t total = 0;
  for (const auto& [m, c] : entries_) total += c;
  return total;
}

std::set<std::string> MappingMultiset::dom() const {
  std::set<std::string> out;
  for (const auto& [m, c] : entries_)
    for (const auto& [v, t] : m.bindings) out.insert(v);
  return out;
}

MappingMultiset MappingMultiset::collapsed() const {
  MappingMultiset out;
  for (const auto& [m, c] : entries_) out.add(m, 1);
  return out;
}

MappingMultiset omega0() {
  MappingMultiset out;
  out.add(mu0(), 1);
  return out;
}

}  // namespace sparqlneg
