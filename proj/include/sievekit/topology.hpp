#pragma once

#include <vector>

#include "sievekit/filter.hpp"

namespace sievekit {

/// Covering sieves per object, indexed by ObjectId.
struct GrothendieckTopology {
  SieveAssignment covering;

  const SieveFamily& at(ObjectId o) const { return covering.at(index(o)); }
  friend bool operator==(const GrothendieckTopology&, const GrothendieckTopology&) = default;
};

enum class TopologyLevel {
  basic,  // maximal sieve, upward closure, pairwise intersections, stability
  full,   // basic plus transitivity
};

Report validate_topology(const FiniteCategory& cat, const GrothendieckTopology& j,
                         TopologyLevel level = TopologyLevel::full);

bool covers(const GrothendieckTopology& j, ObjectId obj, const Sieve& s);

/// Only the maximal sieve covers.
GrothendieckTopology trivial_topology(const FiniteCategory& cat);
/// Every sieve covers, the empty one included.
GrothendieckTopology chaotic_topology(const FiniteCategory& cat);

struct TopologyFilter {
  Filter filter;
  /// Objects where the empty sieve covered and was dropped.
  std::vector<ObjectId> dropped_empty_sieve;
};

/// Removes the empty sieve from every J(C). Throws ValidationError (law
/// "F2-after-dropping-empty") with the witnessing pair when two remaining
/// covers intersect in the empty sieve.
TopologyFilter topology_to_filter(const FiniteCategory& cat, const GrothendieckTopology& j);

}  // namespace sievekit
