#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "sievekit/fincat.hpp"
#include "sievekit/morphism_set.hpp"

namespace sievekit {

/// A right ideal of morphisms into a fixed object: closed under
/// precomposition. Construct through the functions below, which check the
/// invariant; the raw constructor trusts its caller.
class Sieve {
 public:
  Sieve(ObjectId codomain, MorphismSet members) : codomain_(codomain), members_(std::move(members)) {}

  ObjectId codomain() const noexcept { return codomain_; }
  const MorphismSet& members() const noexcept { return members_; }
  bool contains(MorphismId m) const noexcept { return members_.contains(m); }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool is_subset_of(const Sieve& other) const noexcept {
    return codomain_ == other.codomain_ && members_.is_subset_of(other.members_);
  }
  bool meets(const Sieve& other) const noexcept { return members_.intersects(other.members_); }

  friend bool operator==(const Sieve&, const Sieve&) = default;
  /// Codomain first, then the canonical member order.
  friend std::strong_ordering operator<=>(const Sieve& a, const Sieve& b) noexcept {
    if (auto c = index(a.codomain_) <=> index(b.codomain_); c != 0) return c;
    return canonical_compare(a.members_, b.members_);
  }

 private:
  ObjectId codomain_;
  MorphismSet members_;
};

/// Sieves on one object, sorted canonically without duplicates.
using SieveFamily = std::vector<Sieve>;

/// Sorts and deduplicates in place.
void normalize(SieveFamily& family);
bool family_contains(const SieveFamily& family, const Sieve& s);
bool family_subset(const SieveFamily& a, const SieveFamily& b);

bool is_sieve(const FiniteCategory& cat, ObjectId obj, const MorphismSet& members);

/// Checks the right-ideal property; throws ValidationError otherwise.
Sieve make_sieve(const FiniteCategory& cat, ObjectId obj, MorphismSet members);
/// Resolves names first (UnknownName), then as make_sieve.
Sieve sieve_from_names(const FiniteCategory& cat, ObjectId obj, std::span<const std::string> names);
std::vector<std::string> member_names(const FiniteCategory& cat, const Sieve& s);

Sieve empty_sieve(const FiniteCategory& cat, ObjectId obj);
Sieve maximal_sieve(const FiniteCategory& cat, ObjectId obj);

/// Least sieve on `obj` containing `generators`. Throws CodomainMismatch for
/// a generator with another codomain.
Sieve generate_sieve(const FiniteCategory& cat, ObjectId obj, std::span<const MorphismId> generators);

/// h*(S) = { g : h.g in S }, a sieve on dom(h).
Sieve pullback_sieve(const FiniteCategory& cat, MorphismId h, const Sieve& s);

/// Setwise union and intersection. An empty family gives the empty sieve
/// (union) or the maximal sieve (intersection). Throws CodomainMismatch on
/// mixed codomains.
Sieve sieve_union(const FiniteCategory& cat, ObjectId obj, std::span<const Sieve> family);
Sieve sieve_intersection(const FiniteCategory& cat, ObjectId obj, std::span<const Sieve> family);

/// Every sieve on `obj`, in canonical order.
SieveFamily enumerate_sieves(const FiniteCategory& cat, ObjectId obj);

/// Sieves of `lattice` containing at least one member of `generators`.
SieveFamily up_set(const SieveFamily& lattice, const SieveFamily& generators);

}  // namespace sievekit
