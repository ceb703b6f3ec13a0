#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sievekit/fincat.hpp"
#include "sievekit/topology.hpp"

namespace sievekit::corpus {

/// A poset given by its covering pairs (x, y) meaning x < y with nothing
/// in between.
struct PosetSpec {
  std::string name;
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> covers;

  std::vector<std::pair<std::string, std::string>> order() const { return order_from_covers(elements, covers); }
};

PosetSpec chain2();    // 0 < 1
PosetSpec chain3();    // 0 < m < 1
PosetSpec diamond();   // 0 < a, b < 1
PosetSpec pentagon();  // 0 < x < y < 1, 0 < z < 1; not distributive

/// X => Y via f and g.
CategoryDescription parallel_pair();
/// One object `*`, identity e, and s with s.s = s.
CategoryDescription idempotent_monoid();
/// Objects T and C; points p0, p1 : T -> C; c : C -> T; e_i = p_i.c.
CategoryDescription pointed_two();

/// On pointed_two: J(T) = {max}, J(C) = {max, {e0,e1,p0,p1}}.
GrothendieckTopology pointed_two_topology(const FiniteCategory& pt);

}  // namespace sievekit::corpus
