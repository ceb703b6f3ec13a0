#include "sievekit/corpus.hpp"

namespace sievekit::corpus {

PosetSpec chain2() { return {"C2", {"0", "1"}, {{"0", "1"}}}; }

PosetSpec chain3() { return {"C3", {"0", "m", "1"}, {{"0", "m"}, {"m", "1"}}}; }

PosetSpec diamond() { return {"B2", {"0", "a", "b", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}}}; }

PosetSpec pentagon() {
  return {"N5", {"0", "x", "y", "z", "1"}, {{"0", "x"}, {"x", "y"}, {"y", "1"}, {"0", "z"}, {"z", "1"}}};
}

CategoryDescription parallel_pair() {
  CategoryDescription d;
  d.objects = {"X", "Y"};
  d.morphisms = {{"id_X", "X", "X"}, {"id_Y", "Y", "Y"}, {"f", "X", "Y"}, {"g", "X", "Y"}};
  d.identities = {{"X", "id_X"}, {"Y", "id_Y"}};
  return d;
}

CategoryDescription idempotent_monoid() {
  CategoryDescription d;
  d.objects = {"*"};
  d.morphisms = {{"e", "*", "*"}, {"s", "*", "*"}};
  d.identities = {{"*", "e"}};
  d.composition = {{"s", "s", "s"}};
  return d;
}

CategoryDescription pointed_two() {
  CategoryDescription d;
  d.objects = {"C", "T"};
  d.morphisms = {{"id_T", "T", "T"}, {"id_C", "C", "C"}, {"p0", "T", "C"}, {"p1", "T", "C"},
                 {"c", "C", "T"},    {"e0", "C", "C"},   {"e1", "C", "C"}};
  d.identities = {{"T", "id_T"}, {"C", "id_C"}};
  for (const std::string i : {"0", "1"}) {
    d.composition.push_back({"c", "p" + i, "id_T"});
    d.composition.push_back({"p" + i, "c", "e" + i});
    d.composition.push_back({"c", "e" + i, "c"});
    for (const std::string j : {"0", "1"}) {
      d.composition.push_back({"e" + i, "p" + j, "p" + i});
      d.composition.push_back({"e" + i, "e" + j, "e" + i});
    }
  }
  return d;
}

GrothendieckTopology pointed_two_topology(const FiniteCategory& pt) {
  const auto t = pt.object_id("T");
  const auto c = pt.object_id("C");
  const std::vector<std::string> s1 = {"e0", "e1", "p0", "p1"};
  GrothendieckTopology j{SieveAssignment(pt.object_count())};
  j.covering[index(t)] = {maximal_sieve(pt, t)};
  j.covering[index(c)] = {sieve_from_names(pt, c, s1), maximal_sieve(pt, c)};
  normalize(j.covering[index(c)]);
  return j;
}

}  // namespace sievekit::corpus
