#include "sievekit/topology.hpp"

#include <algorithm>

#include "sievekit/errors.hpp"

namespace sievekit {

namespace {

struct TopologyChecker {
  const FiniteCategory& cat;
  const GrothendieckTopology& j;
  std::vector<SieveFamily> lattices;
  Report report;

  void add(std::string law, ObjectId o, std::vector<Witness> w, std::string detail) {
    report.add({std::move(law), cat.object_name(o), std::move(w), std::move(detail)});
  }

  bool shape_ok() {
    bool ok = true;
    for (auto o : cat.object_ids()) {
      for (const auto& s : j.at(o)) {
        if (s.codomain() != o || !is_sieve(cat, o, s.members())) {
          add("not-a-sieve", o, {sieve_witness(cat, "S", s)}, "member is not a sieve on this object");
          ok = false;
        }
      }
    }
    return ok;
  }

  void maximal(ObjectId o) {
    const auto top = maximal_sieve(cat, o);
    if (!covers(j, o, top)) add("maximal-sieve", o, {sieve_witness(cat, "max", top)}, "maximal sieve does not cover");
  }

  void upward(ObjectId o) {
    for (const auto& s : j.at(o)) {
      for (const auto& r : lattices[index(o)]) {
        if (s.is_subset_of(r) && !covers(j, o, r)) {
          add("upward-closure", o, {sieve_witness(cat, "S", s), sieve_witness(cat, "R", r)},
              "R contains the cover S but does not cover");
        }
      }
    }
  }

  void intersections(ObjectId o) {
    const auto& fam = j.at(o);
    for (std::size_t a = 0; a < fam.size(); ++a) {
      for (std::size_t b = a + 1; b < fam.size(); ++b) {
        const Sieve meet(o, fam[a].members() & fam[b].members());
        if (!covers(j, o, meet)) {
          add("intersection", o,
              {sieve_witness(cat, "R", fam[a]), sieve_witness(cat, "S", fam[b]), sieve_witness(cat, "R&S", meet)},
              "intersection of two covers does not cover");
        }
      }
    }
  }

  void stability(ObjectId o) {
    for (const auto& s : j.at(o)) {
      for (auto h : cat.into(o)) {
        const auto pulled = pullback_sieve(cat, h, s);
        if (!covers(j, cat.dom(h), pulled)) {
          add("stability", o,
              {sieve_witness(cat, "S", s), morphism_witness("h", cat.morphism_name(h)),
               sieve_witness(cat, "h*S", pulled)},
              "pullback of a cover does not cover");
        }
      }
    }
  }

  void transitivity(ObjectId o) {
    for (const auto& s : j.at(o)) {
      for (const auto& r : lattices[index(o)]) {
        if (covers(j, o, r)) continue;
        bool locally_covers = true;
        s.members().for_each([&](MorphismId h) {
          if (locally_covers && !covers(j, cat.dom(h), pullback_sieve(cat, h, r))) locally_covers = false;
        });
        if (locally_covers) {
          add("transitivity", o, {sieve_witness(cat, "S", s), sieve_witness(cat, "R", r)},
              "R pulls back to a cover along every member of the cover S, yet does not cover");
        }
      }
    }
  }
};

}  // namespace

Report validate_topology(const FiniteCategory& cat, const GrothendieckTopology& j, TopologyLevel level) {
  if (j.covering.size() != cat.object_count()) {
    throw PreconditionViolation("topology does not assign every object");
  }
  TopologyChecker check{cat, j, {}, {}};
  if (!check.shape_ok()) return check.report;
  for (auto o : cat.object_ids()) check.lattices.push_back(enumerate_sieves(cat, o));
  for (auto o : cat.object_ids()) {
    check.maximal(o);
    check.upward(o);
    check.intersections(o);
    check.stability(o);
    if (level == TopologyLevel::full) check.transitivity(o);
  }
  return check.report;
}

bool covers(const GrothendieckTopology& j, ObjectId obj, const Sieve& s) { return family_contains(j.at(obj), s); }

GrothendieckTopology trivial_topology(const FiniteCategory& cat) { return {trivial_filter(cat).sets}; }

GrothendieckTopology chaotic_topology(const FiniteCategory& cat) {
  GrothendieckTopology j;
  for (auto o : cat.object_ids()) j.covering.push_back(enumerate_sieves(cat, o));
  return j;
}

TopologyFilter topology_to_filter(const FiniteCategory& cat, const GrothendieckTopology& j) {
  if (auto r = validate_topology(cat, j, TopologyLevel::basic); !r.ok()) {
    throw PreconditionViolation("topology fails basic validation: " + describe(r.violations.front()));
  }
  TopologyFilter out;
  for (auto o : cat.object_ids()) {
    SieveFamily family;
    for (const auto& s : j.at(o)) {
      if (!s.empty()) family.push_back(s);
    }
    if (family.size() != j.at(o).size()) out.dropped_empty_sieve.push_back(o);
    for (std::size_t a = 0; a < family.size(); ++a) {
      for (std::size_t b = a + 1; b < family.size(); ++b) {
        if (!family[a].meets(family[b])) {
          Violation v{"F2-after-dropping-empty",
                      cat.object_name(o),
                      {sieve_witness(cat, "R", family[a]), sieve_witness(cat, "S", family[b])},
                      "two covers meet only in the empty sieve"};
          throw ValidationError("topology does not yield a filter: " + describe(v), Report{{v}});
        }
      }
    }
    out.filter.sets.push_back(std::move(family));
  }
  if (auto r = is_filter(cat, out.filter); !r.ok()) {
    throw InternalInconsistency("filter from topology fails its axioms: " + describe(r.violations.front()));
  }
  return out;
}

}  // namespace sievekit
