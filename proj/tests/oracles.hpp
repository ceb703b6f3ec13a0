#pragma once

// Brute-force evaluators written straight from the definitions. They only
// read the category's composition table and never call the library's sieve,
// filter, or convergence algorithms.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "sievekit/fincat.hpp"

namespace oracle {

using sievekit::FiniteCategory;
using sievekit::MorphismId;
using sievekit::ObjectId;

using Set = std::set<MorphismId>;
using Family = std::set<Set>;

inline std::vector<MorphismId> into(const FiniteCategory& cat, ObjectId obj) {
  std::vector<MorphismId> out;
  for (auto m : cat.morphism_ids())
    if (cat.cod(m) == obj) out.push_back(m);
  return out;
}

inline bool right_ideal(const FiniteCategory& cat, ObjectId obj, const Set& s) {
  for (auto f : s) {
    if (cat.cod(f) != obj) return false;
    for (auto g : cat.morphism_ids()) {
      if (auto fg = cat.compose(f, g); fg && !s.count(*fg)) return false;
    }
  }
  return true;
}

/// Every subset of hom(-, obj) passing the right-ideal predicate.
inline Family all_sieves(const FiniteCategory& cat, ObjectId obj) {
  const auto hom = into(cat, obj);
  Family out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << hom.size()); ++mask) {
    Set s;
    for (std::size_t i = 0; i < hom.size(); ++i)
      if (mask >> i & 1) s.insert(hom[i]);
    if (right_ideal(cat, obj, s)) out.insert(s);
  }
  return out;
}

inline Set pullback(const FiniteCategory& cat, MorphismId h, const Set& s) {
  Set out;
  for (auto g : cat.morphism_ids()) {
    if (cat.cod(g) != cat.dom(h)) continue;
    if (s.count(*cat.compose(h, g))) out.insert(g);
  }
  return out;
}

inline Set intersect(const Set& a, const Set& b) {
  Set out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

inline bool subset(const Set& a, const Set& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

inline Set maximal(const FiniteCategory& cat, ObjectId obj) {
  auto v = into(cat, obj);
  return {v.begin(), v.end()};
}

/// F1, F2 (over every finite subfamily, the empty one included) and F3.
inline bool is_filter(const FiniteCategory& cat, ObjectId obj, const Family& f) {
  const auto lattice = all_sieves(cat, obj);
  for (const auto& s : f)
    for (const auto& r : lattice)
      if (subset(s, r) && !f.count(r)) return false;
  std::vector<Set> members(f.begin(), f.end());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << members.size()); ++mask) {
    Set meet = maximal(cat, obj);
    for (std::size_t i = 0; i < members.size(); ++i)
      if (mask >> i & 1) meet = intersect(meet, members[i]);
    if (!f.count(meet)) return false;
  }
  return !f.count(Set{});
}

/// Every subfamily of the sieve lattice that is a filter.
inline std::vector<Family> all_filters(const FiniteCategory& cat, ObjectId obj) {
  const auto lattice = all_sieves(cat, obj);
  std::vector<Set> sieves(lattice.begin(), lattice.end());
  std::vector<Family> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << sieves.size()); ++mask) {
    Family f;
    for (std::size_t i = 0; i < sieves.size(); ++i)
      if (mask >> i & 1) f.insert(sieves[i]);
    if (is_filter(cat, obj, f)) out.push_back(f);
  }
  return out;
}

inline std::optional<ObjectId> terminal(const FiniteCategory& cat) {
  for (auto t : cat.object_ids()) {
    bool ok = true;
    for (auto x : cat.object_ids()) {
      std::size_t n = 0;
      for (auto m : cat.morphism_ids())
        if (cat.dom(m) == x && cat.cod(m) == t) ++n;
      ok = ok && n == 1;
    }
    if (ok) return t;
  }
  return std::nullopt;
}

inline std::vector<MorphismId> point_morphisms(const FiniteCategory& cat, ObjectId obj) {
  std::vector<MorphismId> out;
  auto t = oracle::terminal(cat);
  if (!t) return out;
  for (auto m : cat.morphism_ids())
    if (cat.dom(m) == *t && cat.cod(m) == obj) out.push_back(m);
  return out;
}

/// Evaluator for convergence notions over an explicit covering family.
struct Space {
  const FiniteCategory& cat;
  ObjectId obj;
  Family covering;

  /// V covers and p factors as phi.q with phi in V.
  bool g_neighborhood(MorphismId p, const Set& v) const {
    if (!covering.count(v)) return false;
    for (auto phi : v)
      for (auto q : point_morphisms(cat, cat.dom(phi)))
        if (cat.compose(phi, q) == p) return true;
    return false;
  }

  Family neighborhoods(MorphismId p) const {
    Family out;
    for (const auto& s : all_sieves(cat, obj)) {
      for (const auto& v : covering) {
        if (g_neighborhood(p, v) && subset(v, s)) {
          out.insert(s);
          break;
        }
      }
    }
    return out;
  }

  bool converges(const Family& f, MorphismId p) const {
    for (const auto& n : neighborhoods(p))
      if (!f.count(n)) return false;
    return true;
  }

  bool in_closure(const Set& a, MorphismId p) const {
    for (const auto& n : neighborhoods(p))
      if (intersect(n, a).empty()) return false;
    return true;
  }

  bool cluster(const Family& f, MorphismId p) const {
    for (const auto& a : f)
      if (!in_closure(a, p)) return false;
    return true;
  }
};

}  // namespace oracle
