#include "sievekit/filter.hpp"

#include <algorithm>

#include "sievekit/errors.hpp"

namespace sievekit {

Witness sieve_witness(const FiniteCategory& cat, std::string role, const Sieve& s) {
  return {std::move(role), Witness::Kind::sieve, member_names(cat, s), {}};
}

Witness family_witness(const FiniteCategory& cat, std::string role, const SieveFamily& family) {
  Witness w{std::move(role), Witness::Kind::family, {}, {}};
  for (const auto& s : family) w.sieves.push_back(member_names(cat, s));
  return w;
}

bool family_less(const SieveFamily& a, const SieveFamily& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

void require_shape(const FiniteCategory& cat, const SieveAssignment& sets) {
  if (sets.size() != cat.object_count()) {
    throw PreconditionViolation("assignment covers " + std::to_string(sets.size()) + " objects, category has " +
                                std::to_string(cat.object_count()));
  }
}

std::optional<Violation> check_codomains(const FiniteCategory& cat, ObjectId obj, const SieveFamily& family) {
  for (const auto& s : family) {
    if (s.codomain() != obj || !is_sieve(cat, obj, s.members())) {
      return Violation{"not-a-sieve", cat.object_name(obj), {sieve_witness(cat, "S", s)},
                       "member is not a sieve on this object"};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> check_filter_at(const FiniteCategory& cat, ObjectId obj, const SieveFamily& family) {
  if (auto v = check_codomains(cat, obj, family)) return v;
  const auto& name = cat.object_name(obj);
  const auto lattice = enumerate_sieves(cat, obj);
  for (const auto& s : family) {
    for (const auto& r : lattice) {
      if (s.is_subset_of(r) && !family_contains(family, r)) {
        return Violation{"F1", name, {sieve_witness(cat, "S", s), sieve_witness(cat, "R", r)},
                         "R contains S but is not in the family"};
      }
    }
  }
  if (!family_contains(family, maximal_sieve(cat, obj))) {
    return Violation{"F2",
                     name,
                     {sieve_witness(cat, "max", maximal_sieve(cat, obj))},
                     "empty intersection (the maximal sieve) missing; assignments are required to be nonempty"};
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const Sieve meet(obj, family[i].members() & family[j].members());
      if (!family_contains(family, meet)) {
        return Violation{"F2",
                         name,
                         {sieve_witness(cat, "S", family[i]), sieve_witness(cat, "T", family[j]),
                          sieve_witness(cat, "S&T", meet)},
                         "intersection not in the family"};
      }
    }
  }
  if (family_contains(family, empty_sieve(cat, obj))) {
    return Violation{"F3", name, {sieve_witness(cat, "S", empty_sieve(cat, obj))}, "empty sieve in the family"};
  }
  return std::nullopt;
}

std::optional<Violation> check_base_at(const FiniteCategory& cat, ObjectId obj, const SieveFamily& family) {
  if (auto v = check_codomains(cat, obj, family)) return v;
  const auto& name = cat.object_name(obj);
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const Sieve meet(obj, family[i].members() & family[j].members());
      if (std::none_of(family.begin(), family.end(), [&](const Sieve& r) { return r.is_subset_of(meet); })) {
        return Violation{"B1",
                         name,
                         {sieve_witness(cat, "S", family[i]), sieve_witness(cat, "T", family[j]),
                          sieve_witness(cat, "S&T", meet)},
                         "intersection contains no member"};
      }
    }
  }
  if (family.empty()) return Violation{"B2", name, {}, "base is empty"};
  if (family_contains(family, empty_sieve(cat, obj))) {
    return Violation{"B2", name, {sieve_witness(cat, "S", empty_sieve(cat, obj))}, "empty sieve in the base"};
  }
  return std::nullopt;
}

std::optional<Violation> check_subbase_at(const FiniteCategory& cat, ObjectId obj, const SieveFamily& family) {
  if (auto v = check_codomains(cat, obj, family)) return v;
  // Every finite intersection is nonempty iff the intersection of all of them
  // is. On failure, shrink the whole family to a minimal witness.
  if (!sieve_intersection(cat, obj, family).empty()) return std::nullopt;
  SieveFamily witness = family;
  for (std::size_t i = 0; i < witness.size();) {
    SieveFamily without = witness;
    without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
    if (sieve_intersection(cat, obj, without).empty()) {
      witness = std::move(without);
    } else {
      ++i;
    }
  }
  return Violation{"finite-intersection", cat.object_name(obj), {family_witness(cat, "subcollection", witness)},
                   "subcollection with empty intersection"};
}

namespace {

template <typename Check>
Report check_all(const FiniteCategory& cat, const SieveAssignment& sets, Check check) {
  require_shape(cat, sets);
  Report report;
  for (auto o : cat.object_ids()) {
    if (auto v = check(cat, o, sets[index(o)])) report.add(std::move(*v));
  }
  return report;
}

}  // namespace

Report is_filter(const FiniteCategory& cat, const Filter& f) { return check_all(cat, f.sets, check_filter_at); }
Report is_base(const FiniteCategory& cat, const FilterBase& b) { return check_all(cat, b.sets, check_base_at); }
Report is_subbase(const FiniteCategory& cat, const FilterSubbase& s) {
  return check_all(cat, s.sets, check_subbase_at);
}

Filter trivial_filter(const FiniteCategory& cat) {
  Filter f;
  for (auto o : cat.object_ids()) f.sets.push_back({maximal_sieve(cat, o)});
  return f;
}

SieveFamily filter_from_base_at(const FiniteCategory& cat, ObjectId obj, const SieveFamily& base) {
  if (auto v = check_base_at(cat, obj, base)) throw ValidationError("invalid filter base: " + describe(*v), Report{{*v}});
  auto out = up_set(enumerate_sieves(cat, obj), base);
  if (auto v = check_filter_at(cat, obj, out)) {
    throw InternalInconsistency("generated family is not a filter: " + describe(*v));
  }
  return out;
}

Filter filter_from_base(const FiniteCategory& cat, const FilterBase& base) {
  require_shape(cat, base.sets);
  if (auto r = is_base(cat, base); !r.ok()) {
    throw ValidationError("invalid filter base: " + describe(r.violations.front()), r);
  }
  Filter f;
  for (auto o : cat.object_ids()) f.sets.push_back(filter_from_base_at(cat, o, base.at(o)));
  return f;
}

SieveFamily filter_from_subbase_at(const FiniteCategory& cat, ObjectId obj, const SieveFamily& subbase) {
  if (auto v = check_subbase_at(cat, obj, subbase)) {
    throw ValidationError("invalid filter subbase: " + describe(*v), Report{{*v}});
  }
  // Finite intersections, the empty one (the maximal sieve) included.
  SieveFamily closed{maximal_sieve(cat, obj)};
  for (const auto& s : subbase) {
    const auto current = closed;
    for (const auto& c : current) closed.emplace_back(obj, c.members() & s.members());
    normalize(closed);
  }
  return filter_from_base_at(cat, obj, closed);
}

Filter filter_from_subbase(const FiniteCategory& cat, const FilterSubbase& subbase) {
  require_shape(cat, subbase.sets);
  if (auto r = is_subbase(cat, subbase); !r.ok()) {
    throw ValidationError("invalid filter subbase: " + describe(r.violations.front()), r);
  }
  Filter f;
  for (auto o : cat.object_ids()) f.sets.push_back(filter_from_subbase_at(cat, o, subbase.at(o)));
  return f;
}

bool is_finer(const Filter& finer, const Filter& coarser) {
  if (finer.sets.size() != coarser.sets.size()) throw PreconditionViolation("filters on different categories");
  for (std::size_t i = 0; i < finer.sets.size(); ++i) {
    if (!family_subset(coarser.sets[i], finer.sets[i])) return false;
  }
  return true;
}

Filter meet_filters(std::span<const Filter> family) {
  if (family.empty()) throw PreconditionViolation("meet of an empty family of filters");
  Filter out = family.front();
  for (const auto& f : family.subspan(1)) {
    if (f.sets.size() != out.sets.size()) throw PreconditionViolation("filters on different categories");
    for (std::size_t i = 0; i < out.sets.size(); ++i) {
      SieveFamily both;
      std::set_intersection(out.sets[i].begin(), out.sets[i].end(), f.sets[i].begin(), f.sets[i].end(),
                            std::back_inserter(both));
      out.sets[i] = std::move(both);
    }
  }
  return out;
}

namespace {

SieveFamily guarded_lattice(const FiniteCategory& cat, ObjectId obj, std::size_t guard) {
  auto lattice = enumerate_sieves(cat, obj);
  if (lattice.size() > guard) throw SizeGuardExceeded(cat.object_name(obj), lattice.size(), guard);
  return lattice;
}

// Up-sets of the nonempty sieves, by include/exclude branching: taking a
// sieve takes everything above it, rejecting one rejects everything below.
void enumerate_up_sets(const SieveFamily& nonempty, std::size_t i, std::vector<char>& state,
                       std::vector<SieveFamily>& out) {
  while (i < nonempty.size() && state[i] != 0) ++i;
  if (i == nonempty.size()) {
    SieveFamily chosen;
    for (std::size_t k = 0; k < nonempty.size(); ++k)
      if (state[k] == 1) chosen.push_back(nonempty[k]);
    out.push_back(std::move(chosen));
    return;
  }
  constexpr char in = 1, out_mark = 2;
  auto branch = [&](char mark, auto related) {
    std::vector<char> saved = state;
    bool ok = true;
    for (std::size_t k = 0; k < nonempty.size() && ok; ++k) {
      if (!related(k)) continue;
      if (state[k] != 0 && state[k] != mark) ok = false;
      state[k] = mark;
    }
    if (ok) enumerate_up_sets(nonempty, i + 1, state, out);
    state = std::move(saved);
  };
  branch(in, [&](std::size_t k) { return nonempty[i].is_subset_of(nonempty[k]); });
  branch(out_mark, [&](std::size_t k) { return nonempty[k].is_subset_of(nonempty[i]); });
}

}  // namespace

std::vector<SieveFamily> enumerate_object_filters(const FiniteCategory& cat, ObjectId obj, std::size_t guard) {
  const auto lattice = guarded_lattice(cat, obj, guard);
  SieveFamily nonempty;
  for (const auto& s : lattice)
    if (!s.empty()) nonempty.push_back(s);
  std::vector<SieveFamily> up_sets;
  std::vector<char> state(nonempty.size(), 0);
  enumerate_up_sets(nonempty, 0, state, up_sets);

  std::vector<SieveFamily> filters;
  for (auto& candidate : up_sets) {
    normalize(candidate);
    if (!check_filter_at(cat, obj, candidate)) filters.push_back(std::move(candidate));
  }
  std::sort(filters.begin(), filters.end(), family_less);
  return filters;
}

bool is_ultrafilter_at(const FiniteCategory& cat, ObjectId obj, const SieveFamily& family, std::size_t guard) {
  for (const auto& g : enumerate_object_filters(cat, obj, guard)) {
    if (g.size() > family.size() && family_subset(family, g)) return false;
  }
  return true;
}

bool is_ultrafilter(const FiniteCategory& cat, const Filter& f, std::size_t guard) {
  require_shape(cat, f.sets);
  for (auto o : cat.object_ids()) {
    if (!is_ultrafilter_at(cat, o, f.at(o), guard)) return false;
  }
  return true;
}

SieveFamily extend_to_ultrafilter_at(const FiniteCategory& cat, ObjectId obj, const SieveFamily& family,
                                     std::size_t guard) {
  if (auto v = check_filter_at(cat, obj, family)) {
    throw PreconditionViolation("cannot extend a non-filter: " + describe(*v));
  }
  const auto lattice = guarded_lattice(cat, obj, guard);
  const auto least = sieve_intersection(cat, obj, family);
  // Canonical order is by cardinality first, so the first nonempty sieve
  // below `least` with no nonempty proper subsieve is the least atom.
  for (const auto& a : lattice) {
    if (a.empty() || !a.is_subset_of(least)) continue;
    const bool minimal = std::none_of(lattice.begin(), lattice.end(), [&](const Sieve& b) {
      return !b.empty() && b != a && b.is_subset_of(a);
    });
    if (minimal) return up_set(lattice, {a});
  }
  throw InternalInconsistency("filter member without a nonempty minimal subsieve");
}

Filter extend_to_ultrafilter(const FiniteCategory& cat, const Filter& f, std::size_t guard) {
  require_shape(cat, f.sets);
  Filter out;
  for (auto o : cat.object_ids()) out.sets.push_back(extend_to_ultrafilter_at(cat, o, f.at(o), guard));
  return out;
}

std::optional<std::vector<Sieve>> check_prime(const FiniteCategory& cat, ObjectId obj, const SieveFamily& family) {
  return check_prime_finite_union(cat, obj, family, 2);
}

std::optional<std::vector<Sieve>> check_prime_finite_union(const FiniteCategory& cat, ObjectId obj,
                                                           const SieveFamily& family, std::size_t n) {
  if (n == 0) throw PreconditionViolation("finite-union check needs at least one member");
  const auto lattice = enumerate_sieves(cat, obj);
  // Nondecreasing index tuples enumerate multisets in canonical order.
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    MorphismSet joined(cat.morphism_count());
    bool some_member = false;
    for (auto i : pick) {
      joined |= lattice[i].members();
      some_member = some_member || family_contains(family, lattice[i]);
    }
    if (!some_member && family_contains(family, Sieve(obj, joined))) {
      std::vector<Sieve> parts;
      for (auto i : pick) parts.push_back(lattice[i]);
      return parts;
    }
    std::size_t k = n;
    while (k > 0 && pick[k - 1] + 1 == lattice.size()) --k;
    if (k == 0) return std::nullopt;
    ++pick[k - 1];
    for (std::size_t j = k; j < n; ++j) pick[j] = pick[k - 1];
  }
}

Report audit_ultrafilter_primality(const FiniteCategory& cat, ObjectId obj, std::size_t n, std::size_t guard) {
  Report report;
  for (const auto& u : enumerate_object_filters(cat, obj, guard)) {
    if (!is_ultrafilter_at(cat, obj, u, guard)) continue;
    if (auto parts = check_prime_finite_union(cat, obj, u, n)) {
      Violation v{"prime", cat.object_name(obj), {family_witness(cat, "U", u)}, "union in U but no part in U"};
      for (std::size_t i = 0; i < parts->size(); ++i) {
        v.witnesses.push_back(sieve_witness(cat, "S" + std::to_string(i + 1), (*parts)[i]));
      }
      report.add(std::move(v));
    }
  }
  return report;
}

}  // namespace sievekit
