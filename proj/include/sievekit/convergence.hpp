#pragma once

#include <optional>
#include <vector>

#include "sievekit/topology.hpp"

namespace sievekit {

/// Cover-neighborhoods of a point: every sieve on the point's target that
/// contains some G-neighborhood of the point.
struct NeighborhoodSystem {
  Point point;
  ObjectId object;
  SieveFamily members;
};

/// Definitional test: V covers and some member phi of V factors the point
/// through a point q of dom(phi), i.e. phi.q = p.
bool g_neighborhood_by_search(const FiniteCategory& cat, const GrothendieckTopology& j, const Point& p,
                              const Sieve& v);
/// Shortcut test: V covers and contains p itself. Equivalent to the search
/// because sieves are right ideals.
bool g_neighborhood_by_membership(const GrothendieckTopology& j, const Point& p, const Sieve& v);

/// Runs both tests and throws InternalInconsistency if they disagree.
/// Throws CodomainMismatch when V does not live on the point's target.
bool is_g_neighborhood(const FiniteCategory& cat, const GrothendieckTopology& j, const Point& p, const Sieve& v);

SieveFamily g_neighborhoods(const FiniteCategory& cat, const GrothendieckTopology& j, const Point& p);
/// Covers of T's object that contain T.
SieveFamily g_neighborhoods_of_sieve(const FiniteCategory& cat, const GrothendieckTopology& j, const Sieve& t);

NeighborhoodSystem cover_neighborhoods(const FiniteCategory& cat, const GrothendieckTopology& j, const Point& p);

/// Checks the filter axioms on the cover-neighborhoods of `p`.
Report neighborhood_filter_check(const FiniteCategory& cat, const GrothendieckTopology& j, const Point& p);

/// `family` is the filter's value at p.target.
bool converges(const FiniteCategory& cat, const GrothendieckTopology& j, const SieveFamily& family, const Point& p);
bool converges(const FiniteCategory& cat, const GrothendieckTopology& j, const Filter& f, const Point& p);

bool in_closure(const FiniteCategory& cat, const GrothendieckTopology& j, const Sieve& a, const Point& p);
/// Points of A's object whose every cover-neighborhood meets A. Computed
/// twice (via cover-neighborhoods and via covers containing the point);
/// throws InternalInconsistency if the two disagree.
std::vector<Point> closure(const FiniteCategory& cat, const GrothendieckTopology& j, const Sieve& a);

/// p lies in the closure of every member of `family`.
bool is_cluster_point(const FiniteCategory& cat, const GrothendieckTopology& j, const SieveFamily& family,
                      const Point& p);
bool is_cluster_point(const FiniteCategory& cat, const GrothendieckTopology& j, const Filter& f, const Point& p);
bool is_cluster_point(const FiniteCategory& cat, const GrothendieckTopology& j, const FilterBase& b, const Point& p);

struct ClusterBase {
  /// { A & V : A in the filter, V a G-neighborhood of p }
  SieveFamily family;
  /// Set when the family turns out not to be a filter base.
  std::optional<Violation> failure;
};

/// Throws PreconditionViolation unless p is a cluster point of `family`.
ClusterBase cluster_base(const FiniteCategory& cat, const GrothendieckTopology& j, const SieveFamily& family,
                         const Point& p);

/// One row of an exhaustive equivalence audit.
struct AuditCase {
  SieveFamily filter;         // empty for closure audits
  std::optional<Sieve> sieve; // set for closure audits
  Point point;
  bool lhs = false;
  bool rhs = false;
  std::optional<SieveFamily> witness;  // a converging filter when rhs holds
};

struct EquivalenceAudit {
  ObjectId object;
  std::size_t filters = 0;
  std::vector<AuditCase> cases;

  bool holds() const;
  std::vector<AuditCase> counterexamples() const;
};

/// Over every filter on `obj` and every point: p is a cluster point of F
/// iff some filter finer than F converges to p.
EquivalenceAudit audit_theorem_cluster(const FiniteCategory& cat, const GrothendieckTopology& j, ObjectId obj,
                                       std::size_t guard = kDefaultSieveGuard);

/// Over every sieve A on `obj` and every point: p is in the closure of A
/// iff some filter containing A converges to p.
EquivalenceAudit audit_theorem_closure(const FiniteCategory& cat, const GrothendieckTopology& j, ObjectId obj,
                                       std::size_t guard = kDefaultSieveGuard);

}  // namespace sievekit
