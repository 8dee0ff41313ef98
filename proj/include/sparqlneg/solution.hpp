#pragma once
// Solution mappings (partial functions from variables to ground terms) and
// multisets of mappings with explicit cardinalities. Multisets are kept in a
// canonical ordered form: entries sorted by mapping, cardinalities positive,
// a cardinality of zero means the mapping is absent.

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "sparqlneg/model.hpp"

namespace sparqlneg {

struct Mapping {
  // keys are variable names including the "?" marker; values are ground terms
  std::map<std::string, Term> bindings;

  auto operator<=>(const Mapping&) const = default;

  bool bound(const std::string& var) const { return bindings.count(var) > 0; }
  const Term& at(const std::string& var) const;
  std::set<std::string> dom() const;
  bool empty() const { return bindings.empty(); }
};

Mapping make_mapping(std::initializer_list<std::pair<std::string, Term>> bs);

// compatible: agree on every shared variable (the empty mapping is compatible
// with everything; any mapping is compatible with itself)
bool compatible(const Mapping& m1, const Mapping& m2);
// restriction of m to the variables in w
Mapping restrict_to(const Mapping& m, const std::set<std::string>& w);
// union of two compatible mappings; throws Error("incompatible-mappings")
Mapping merge(const Mapping& m1, const Mapping& m2);
bool dom_disjoint(const Mapping& m1, const Mapping& m2);

class MappingMultiset {
 public:
  using Entries = std::map<Mapping, std::uint64_t>;

  MappingMultiset() = default;
  static MappingMultiset of(
      std::initializer_list<std::pair<Mapping, std::uint64_t>> entries);

  void add(const Mapping& m, std::uint64_t n = 1);  // n == 0 is a no-op
  std::uint64_t card(const Mapping& m) const;
  bool contains(const Mapping& m) const { return card(m) > 0; }
  bool empty() const { return entries_.empty(); }
  std::size_t distinct_size() const { return entries_.size(); }
  std::uint64_t total_card() const;
  const Entries& entries() const { return entries_; }
  std::set<std::string> dom() const;  // union of the entry domains
  MappingMultiset collapsed() const;  // every cardinality forced to 1

  bool operator==(const MappingMultiset&) const = default;

 private:
  Entries entries_;
};

inline Mapping mu0() { return Mapping{}; }
MappingMultiset omega0();  // { mu0 : 1 }

}  // namespace sparqlneg
