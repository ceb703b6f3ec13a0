#include "sievekit/sieve.hpp"

#include <algorithm>

#include "sievekit/errors.hpp"

namespace sievekit {

void normalize(SieveFamily& family) {
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
}

bool family_contains(const SieveFamily& family, const Sieve& s) {
  return std::binary_search(family.begin(), family.end(), s);
}

bool family_subset(const SieveFamily& a, const SieveFamily& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool is_sieve(const FiniteCategory& cat, ObjectId obj, const MorphismSet& members) {
  bool ok = true;
  members.for_each([&](MorphismId f) {
    if (!ok) return;
    if (cat.cod(f) != obj) {
      ok = false;
      return;
    }
    for (auto g : cat.into(cat.dom(f))) {
      if (!members.contains(cat.then(g, f))) {
        ok = false;
        return;
      }
    }
  });
  return ok;
}

Sieve make_sieve(const FiniteCategory& cat, ObjectId obj, MorphismSet members) {
  if (!is_sieve(cat, obj, members)) {
    Sieve s(obj, members);
    Report r{{{"right-ideal",
               cat.object_name(obj),
               {{"members", Witness::Kind::sieve, member_names(cat, s), {}}},
               "not closed under precomposition or wrong codomain"}}};
    throw ValidationError("not a sieve on " + cat.object_name(obj), std::move(r));
  }
  return {obj, std::move(members)};
}

Sieve sieve_from_names(const FiniteCategory& cat, ObjectId obj, std::span<const std::string> names) {
  MorphismSet members(cat.morphism_count());
  for (const auto& n : names) members.insert(cat.morphism_id(n));
  return make_sieve(cat, obj, std::move(members));
}

std::vector<std::string> member_names(const FiniteCategory& cat, const Sieve& s) {
  std::vector<std::string> out;
  s.members().for_each([&](MorphismId m) { out.push_back(cat.morphism_name(m)); });
  return out;
}

Sieve empty_sieve(const FiniteCategory& cat, ObjectId obj) { return {obj, MorphismSet(cat.morphism_count())}; }

Sieve maximal_sieve(const FiniteCategory& cat, ObjectId obj) {
  MorphismSet members(cat.morphism_count());
  for (auto m : cat.into(obj)) members.insert(m);
  return {obj, std::move(members)};
}

Sieve generate_sieve(const FiniteCategory& cat, ObjectId obj, std::span<const MorphismId> generators) {
  MorphismSet members(cat.morphism_count());
  std::vector<MorphismId> frontier;
  for (auto g : generators) {
    if (cat.cod(g) != obj) {
      throw CodomainMismatch("generator '" + cat.morphism_name(g) + "' does not have codomain " +
                             cat.object_name(obj));
    }
    if (!members.contains(g)) {
      members.insert(g);
      frontier.push_back(g);
    }
  }
  while (!frontier.empty()) {
    const auto f = frontier.back();
    frontier.pop_back();
    for (auto g : cat.into(cat.dom(f))) {
      const auto fg = cat.then(g, f);
      if (!members.contains(fg)) {
        members.insert(fg);
        frontier.push_back(fg);
      }
    }
  }
  return {obj, std::move(members)};
}

Sieve pullback_sieve(const FiniteCategory& cat, MorphismId h, const Sieve& s) {
  if (cat.cod(h) != s.codomain()) {
    throw CodomainMismatch("cannot pull back a sieve on " + cat.object_name(s.codomain()) + " along '" +
                           cat.morphism_name(h) + "'");
  }
  const auto d = cat.dom(h);
  MorphismSet members(cat.morphism_count());
  for (auto g : cat.into(d)) {
    if (s.contains(cat.then(g, h))) members.insert(g);
  }
  return {d, std::move(members)};
}

namespace {

void require_codomain(const FiniteCategory& cat, ObjectId obj, std::span<const Sieve> family) {
  for (const auto& s : family) {
    if (s.codomain() != obj) {
      throw CodomainMismatch("sieve on " + cat.object_name(s.codomain()) + " mixed into a family on " +
                             cat.object_name(obj));
    }
  }
}

}  // namespace

Sieve sieve_union(const FiniteCategory& cat, ObjectId obj, std::span<const Sieve> family) {
  require_codomain(cat, obj, family);
  auto members = MorphismSet(cat.morphism_count());
  for (const auto& s : family) members |= s.members();
  return {obj, std::move(members)};
}

Sieve sieve_intersection(const FiniteCategory& cat, ObjectId obj, std::span<const Sieve> family) {
  require_codomain(cat, obj, family);
  auto members = maximal_sieve(cat, obj).members();
  for (const auto& s : family) members &= s.members();
  return {obj, std::move(members)};
}

namespace {

// Down-set enumeration over the preorder "f reaches f.g". Each branch either
// takes a morphism together with its principal sieve, or rejects it together
// with everything whose principal sieve contains it.
struct SieveEnumerator {
  const std::vector<MorphismId>& order;
  const std::vector<MorphismSet>& principal;
  const std::vector<MorphismSet>& above;
  ObjectId obj;
  SieveFamily& out;

  void run(std::size_t i, const MorphismSet& in, const MorphismSet& excluded) {
    while (i < order.size() && (in.contains(order[i]) || excluded.contains(order[i]))) ++i;
    if (i == order.size()) {
      out.emplace_back(obj, in);
      return;
    }
    if (!principal[i].intersects(excluded)) run(i + 1, in | principal[i], excluded);
    if (!above[i].intersects(in)) run(i + 1, in, excluded | above[i]);
  }
};

}  // namespace

SieveFamily enumerate_sieves(const FiniteCategory& cat, ObjectId obj) {
  const auto into = cat.into(obj);
  std::vector<MorphismId> order(into.begin(), into.end());
  std::vector<MorphismSet> principal, above;
  for (auto m : order) principal.push_back(generate_sieve(cat, obj, std::span(&m, 1)).members());
  for (std::size_t i = 0; i < order.size(); ++i) {
    MorphismSet up(cat.morphism_count());
    for (std::size_t j = 0; j < order.size(); ++j) {
      if (principal[j].contains(order[i])) up.insert(order[j]);
    }
    above.push_back(std::move(up));
  }
  SieveFamily out;
  SieveEnumerator{order, principal, above, obj, out}.run(0, MorphismSet(cat.morphism_count()),
                                                        MorphismSet(cat.morphism_count()));
  normalize(out);
  return out;
}

SieveFamily up_set(const SieveFamily& lattice, const SieveFamily& generators) {
  SieveFamily out;
  for (const auto& s : lattice) {
    if (std::any_of(generators.begin(), generators.end(), [&](const Sieve& g) { return g.is_subset_of(s); })) {
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace sievekit
