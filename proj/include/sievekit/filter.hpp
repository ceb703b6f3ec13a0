#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sievekit/report.hpp"
#include "sievekit/sieve.hpp"

namespace sievekit {

/// One sieve family per object, indexed by ObjectId.
using SieveAssignment = std::vector<SieveFamily>;

/// Per object: upward closed, closed under finite intersections (so the
/// maximal sieve is always present) and free of the empty sieve. Objects are
/// independent of one another.
struct Filter {
  SieveAssignment sets;

  const SieveFamily& at(ObjectId o) const { return sets.at(index(o)); }
  friend bool operator==(const Filter&, const Filter&) = default;
};

/// Per object: any two members' intersection contains a member; nonempty;
/// no empty sieve.
struct FilterBase {
  SieveAssignment sets;

  const SieveFamily& at(ObjectId o) const { return sets.at(index(o)); }
};

/// Per object: no finite subcollection has empty intersection.
struct FilterSubbase {
  SieveAssignment sets;

  const SieveFamily& at(ObjectId o) const { return sets.at(index(o)); }
};

/// Largest sieve lattice the exhaustive searches will enumerate by default.
inline constexpr std::size_t kDefaultSieveGuard = 20;

/// First violated filter axiom at one object, checked in the order F1, F2, F3.
std::optional<Violation> check_filter_at(const FiniteCategory& cat, ObjectId obj, const SieveFamily& family);
std::optional<Violation> check_base_at(const FiniteCategory& cat, ObjectId obj, const SieveFamily& family);
std::optional<Violation> check_subbase_at(const FiniteCategory& cat, ObjectId obj, const SieveFamily& family);

Report is_filter(const FiniteCategory& cat, const Filter& f);
Report is_base(const FiniteCategory& cat, const FilterBase& b);
Report is_subbase(const FiniteCategory& cat, const FilterSubbase& s);

/// The maximal sieve alone at every object; the coarsest filter.
Filter trivial_filter(const FiniteCategory& cat);

/// All sieves containing some member of the base. Throws ValidationError for
/// an invalid base.
Filter filter_from_base(const FiniteCategory& cat, const FilterBase& base);
SieveFamily filter_from_base_at(const FiniteCategory& cat, ObjectId obj, const SieveFamily& base);

/// Closes the subbase under finite intersections, then generates. The result
/// is the coarsest filter containing the subbase. Throws ValidationError for
/// an invalid subbase.
Filter filter_from_subbase(const FiniteCategory& cat, const FilterSubbase& subbase);
SieveFamily filter_from_subbase_at(const FiniteCategory& cat, ObjectId obj, const SieveFamily& subbase);

/// `finer` contains `coarser` at every object.
bool is_finer(const Filter& finer, const Filter& coarser);

/// Pointwise intersection: the greatest lower bound. Throws
/// PreconditionViolation on an empty family.
Filter meet_filters(std::span<const Filter> family);

/// Every filter family on `obj`, smallest first. Throws SizeGuardExceeded
/// when `obj` carries more than `guard` sieves.
std::vector<SieveFamily> enumerate_object_filters(const FiniteCategory& cat, ObjectId obj,
                                                  std::size_t guard = kDefaultSieveGuard);

bool is_ultrafilter_at(const FiniteCategory& cat, ObjectId obj, const SieveFamily& family,
                       std::size_t guard = kDefaultSieveGuard);
bool is_ultrafilter(const FiniteCategory& cat, const Filter& f, std::size_t guard = kDefaultSieveGuard);

/// At each object: take the least member S0, then the canonically least
/// minimal nonempty sieve A inside S0, and return everything above A.
SieveFamily extend_to_ultrafilter_at(const FiniteCategory& cat, ObjectId obj, const SieveFamily& family,
                                     std::size_t guard = kDefaultSieveGuard);
Filter extend_to_ultrafilter(const FiniteCategory& cat, const Filter& f, std::size_t guard = kDefaultSieveGuard);

/// Searches for sieves S, T on `obj` with S ∪ T in the family but neither S
/// nor T in it. Returns the first such pair in canonical order.
std::optional<std::vector<Sieve>> check_prime(const FiniteCategory& cat, ObjectId obj, const SieveFamily& family);

/// Same search over every multiset of `n` sieves.
std::optional<std::vector<Sieve>> check_prime_finite_union(const FiniteCategory& cat, ObjectId obj,
                                                           const SieveFamily& family, std::size_t n);

/// Runs check_prime_finite_union with `n` members against every ultrafilter
/// on `obj`; each counterexample becomes a violation.
Report audit_ultrafilter_primality(const FiniteCategory& cat, ObjectId obj, std::size_t n,
                                   std::size_t guard = kDefaultSieveGuard);

/// Smallest-first ordering of families: by size, then member by member.
bool family_less(const SieveFamily& a, const SieveFamily& b);

Witness sieve_witness(const FiniteCategory& cat, std::string role, const Sieve& s);
Witness family_witness(const FiniteCategory& cat, std::string role, const SieveFamily& family);

}  // namespace sievekit
