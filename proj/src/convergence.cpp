#include "sievekit/convergence.hpp"

#include <algorithm>

#include "sievekit/errors.hpp"

namespace sievekit {

namespace {

void require_on_target(const FiniteCategory& cat, const Point& p, const Sieve& v) {
  if (v.codomain() != p.target) {
    throw CodomainMismatch("sieve on " + cat.object_name(v.codomain()) + " tested against a point of " +
                           cat.object_name(p.target));
  }
}

// Points of `obj`, or none when the category has no terminal object.
std::vector<Point> points_or_none(const FiniteCategory& cat, ObjectId obj) {
  if (!terminal_object(cat)) return {};
  return points(cat, obj);
}

}  // namespace

bool g_neighborhood_by_search(const FiniteCategory& cat, const GrothendieckTopology& j, const Point& p,
                              const Sieve& v) {
  require_on_target(cat, p, v);
  if (!covers(j, p.target, v)) return false;
  bool found = false;
  v.members().for_each([&](MorphismId phi) {
    if (found) return;
    for (const auto& q : points(cat, cat.dom(phi))) {
      if (cat.then(q.carrier, phi) == p.carrier) {
        found = true;
        return;
      }
    }
  });
  return found;
}

bool g_neighborhood_by_membership(const GrothendieckTopology& j, const Point& p, const Sieve& v) {
  return v.codomain() == p.target && covers(j, p.target, v) && v.contains(p.carrier);
}

bool is_g_neighborhood(const FiniteCategory& cat, const GrothendieckTopology& j, const Point& p, const Sieve& v) {
  const bool searched = g_neighborhood_by_search(cat, j, p, v);
  const bool shortcut = g_neighborhood_by_membership(j, p, v);
  if (searched != shortcut) {
    throw InternalInconsistency("G-neighborhood search and membership shortcut disagree for point '" +
                                cat.morphism_name(p.carrier) + "'");
  }
  return searched;
}

SieveFamily g_neighborhoods(const FiniteCategory& cat, const GrothendieckTopology& j, const Point& p) {
  SieveFamily out;
  for (const auto& v : j.at(p.target)) {
    if (is_g_neighborhood(cat, j, p, v)) out.push_back(v);
  }
  return out;
}

SieveFamily g_neighborhoods_of_sieve(const FiniteCategory&, const GrothendieckTopology& j, const Sieve& t) {
  SieveFamily out;
  for (const auto& v : j.at(t.codomain())) {
    if (t.is_subset_of(v)) out.push_back(v);
  }
  return out;
}

NeighborhoodSystem cover_neighborhoods(const FiniteCategory& cat, const GrothendieckTopology& j, const Point& p) {
  return {p, p.target, up_set(enumerate_sieves(cat, p.target), g_neighborhoods(cat, j, p))};
}

Report neighborhood_filter_check(const FiniteCategory& cat, const GrothendieckTopology& j, const Point& p) {
  Report report;
  const auto system = cover_neighborhoods(cat, j, p);
  if (auto v = check_filter_at(cat, p.target, system.members)) {
    v->witnesses.insert(v->witnesses.begin(), morphism_witness("p", cat.morphism_name(p.carrier)));
    report.add(std::move(*v));
  }
  return report;
}

bool converges(const FiniteCategory& cat, const GrothendieckTopology& j, const SieveFamily& family, const Point& p) {
  return family_subset(cover_neighborhoods(cat, j, p).members, family);
}

bool converges(const FiniteCategory& cat, const GrothendieckTopology& j, const Filter& f, const Point& p) {
  return converges(cat, j, f.at(p.target), p);
}

bool in_closure(const FiniteCategory& cat, const GrothendieckTopology& j, const Sieve& a, const Point& p) {
  require_on_target(cat, p, a);
  const auto system = cover_neighborhoods(cat, j, p);
  return std::all_of(system.members.begin(), system.members.end(), [&](const Sieve& n) { return n.meets(a); });
}

std::vector<Point> closure(const FiniteCategory& cat, const GrothendieckTopology& j, const Sieve& a) {
  std::vector<Point> out;
  for (const auto& p : points_or_none(cat, a.codomain())) {
    const bool via_neighborhoods = in_closure(cat, j, a, p);
    const auto& cov = j.at(p.target);
    const bool via_covers = std::all_of(cov.begin(), cov.end(), [&](const Sieve& v) {
      return !v.contains(p.carrier) || v.meets(a);
    });
    if (via_neighborhoods != via_covers) {
      throw InternalInconsistency("closure computations disagree at point '" + cat.morphism_name(p.carrier) + "'");
    }
    if (via_neighborhoods) out.push_back(p);
  }
  return out;
}

bool is_cluster_point(const FiniteCategory& cat, const GrothendieckTopology& j, const SieveFamily& family,
                      const Point& p) {
  return std::all_of(family.begin(), family.end(), [&](const Sieve& s) { return in_closure(cat, j, s, p); });
}

bool is_cluster_point(const FiniteCategory& cat, const GrothendieckTopology& j, const Filter& f, const Point& p) {
  return is_cluster_point(cat, j, f.at(p.target), p);
}

bool is_cluster_point(const FiniteCategory& cat, const GrothendieckTopology& j, const FilterBase& b, const Point& p) {
  return is_cluster_point(cat, j, b.at(p.target), p);
}

ClusterBase cluster_base(const FiniteCategory& cat, const GrothendieckTopology& j, const SieveFamily& family,
                         const Point& p) {
  if (!is_cluster_point(cat, j, family, p)) {
    throw PreconditionViolation("'" + cat.morphism_name(p.carrier) + "' is not a cluster point of the filter");
  }
  ClusterBase out;
  for (const auto& a : family) {
    for (const auto& v : g_neighborhoods(cat, j, p)) out.family.emplace_back(p.target, a.members() & v.members());
  }
  normalize(out.family);
  out.failure = check_base_at(cat, p.target, out.family);
  return out;
}

bool EquivalenceAudit::holds() const {
  return std::all_of(cases.begin(), cases.end(), [](const AuditCase& c) { return c.lhs == c.rhs; });
}

std::vector<AuditCase> EquivalenceAudit::counterexamples() const {
  std::vector<AuditCase> out;
  std::copy_if(cases.begin(), cases.end(), std::back_inserter(out), [](const AuditCase& c) { return c.lhs != c.rhs; });
  return out;
}

EquivalenceAudit audit_theorem_cluster(const FiniteCategory& cat, const GrothendieckTopology& j, ObjectId obj,
                                       std::size_t guard) {
  const auto filters = enumerate_object_filters(cat, obj, guard);
  EquivalenceAudit audit{obj, filters.size(), {}};
  for (const auto& f : filters) {
    for (const auto& p : points_or_none(cat, obj)) {
      AuditCase c{f, std::nullopt, p, is_cluster_point(cat, j, f, p), false, std::nullopt};
      for (const auto& g : filters) {
        if (family_subset(f, g) && converges(cat, j, g, p)) {
          c.rhs = true;
          c.witness = g;
          break;
        }
      }
      audit.cases.push_back(std::move(c));
    }
  }
  return audit;
}

EquivalenceAudit audit_theorem_closure(const FiniteCategory& cat, const GrothendieckTopology& j, ObjectId obj,
                                       std::size_t guard) {
  const auto filters = enumerate_object_filters(cat, obj, guard);
  EquivalenceAudit audit{obj, filters.size(), {}};
  for (const auto& a : enumerate_sieves(cat, obj)) {
    for (const auto& p : points_or_none(cat, obj)) {
      AuditCase c{{}, a, p, in_closure(cat, j, a, p), false, std::nullopt};
      for (const auto& g : filters) {
        if (family_contains(g, a) && converges(cat, j, g, p)) {
          c.rhs = true;
          c.witness = g;
          break;
        }
      }
      audit.cases.push_back(std::move(c));
    }
  }
  return audit;
}

}  // namespace sievekit
