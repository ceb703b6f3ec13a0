#include <gtest/gtest.h>

#include <algorithm>

#include "generators.hpp"
#include "sievekit/cli/document.hpp"
#include "sievekit/convergence.hpp"
#include "test_support.hpp"

using namespace sievekit;
using namespace testing_support;

namespace {

constexpr std::uint32_t kSeed = 20240607;

FiniteCategory category_of(const corpus::PosetSpec& spec) {
  const auto order = spec.order();
  return from_poset(spec.elements, order);
}

std::vector<corpus::PosetSpec> random_posets(std::size_t count, std::size_t max_size) {
  std::mt19937 rng(kSeed);
  std::uniform_int_distribution<std::size_t> size(1, max_size);
  std::uniform_real_distribution<double> density(0.1, 0.9);
  std::vector<corpus::PosetSpec> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(generators::random_poset(rng, size(rng), density(rng)));
  return out;
}

}  // namespace

TEST(RandomPosets, CategoriesAreWellFormed) {
  for (const auto& spec : random_posets(60, 6)) {
    const auto cat = category_of(spec);
    for (auto g : cat.morphism_ids()) {
      for (auto f : cat.morphism_ids()) {
        const auto gf = cat.compose(g, f);
        ASSERT_EQ(gf.has_value(), cat.dom(g) == cat.cod(f));
        if (!gf) continue;
        EXPECT_EQ(cat.dom(*gf), cat.dom(f));
        EXPECT_EQ(cat.cod(*gf), cat.cod(g));
      }
      EXPECT_EQ(cat.compose(g, cat.identity(cat.dom(g))), g);
      EXPECT_EQ(cat.compose(cat.identity(cat.cod(g)), g), g);
    }
    EXPECT_EQ(terminal_object(cat), oracle::terminal(cat));
    if (const auto t = terminal_object(cat)) {
      const auto pts = points(cat, *t);
      ASSERT_EQ(pts.size(), 1u);
      EXPECT_EQ(pts.front().carrier, cat.identity(*t));
    }
  }
}

TEST(RandomPosets, SieveLatticesMatchBruteForce) {
  for (const auto& spec : random_posets(60, 6)) {
    const auto cat = category_of(spec);
    for (auto o : cat.object_ids()) {
      const auto lattice = enumerate_sieves(cat, o);
      EXPECT_EQ(to_family(lattice), oracle::all_sieves(cat, o));
      EXPECT_TRUE(std::is_sorted(lattice.begin(), lattice.end()));
      for (const auto& a : lattice) {
        for (const auto& b : lattice) {
          EXPECT_TRUE(family_contains(lattice, Sieve(o, a.members() | b.members())));
          EXPECT_TRUE(family_contains(lattice, Sieve(o, a.members() & b.members())));
        }
      }
    }
  }
}

TEST(RandomPosets, PullbackIsFunctorial) {
  for (const auto& spec : random_posets(40, 5)) {
    const auto cat = category_of(spec);
    for (auto h : cat.morphism_ids()) {
      const auto c = cat.cod(h);
      EXPECT_EQ(pullback_sieve(cat, h, maximal_sieve(cat, c)), maximal_sieve(cat, cat.dom(h)));
      EXPECT_TRUE(pullback_sieve(cat, h, empty_sieve(cat, c)).empty());
      for (const auto& s : enumerate_sieves(cat, c)) {
        const auto hs = pullback_sieve(cat, h, s);
        EXPECT_EQ(to_set(hs), oracle::pullback(cat, h, to_set(s)));
        for (auto f : cat.into(cat.dom(h)))
          EXPECT_EQ(pullback_sieve(cat, *cat.compose(h, f), s), pullback_sieve(cat, f, hs));
      }
    }
  }
}

TEST(RandomPosets, GenerationIsAClosureOperator) {
  std::mt19937 rng(kSeed + 1);
  for (const auto& spec : random_posets(40, 6)) {
    const auto cat = category_of(spec);
    for (auto o : cat.object_ids()) {
      const auto into = cat.into(o);
      for (int trial = 0; trial < 8; ++trial) {
        std::vector<MorphismId> small, large;
        for (auto m : into) {
          const auto roll = rng() % 3;
          if (roll == 0) small.push_back(m);
          if (roll <= 1) large.push_back(m);
        }
        const auto gs = generate_sieve(cat, o, small);
        const auto gl = generate_sieve(cat, o, large);
        for (auto m : small) EXPECT_TRUE(gs.contains(m));
        EXPECT_TRUE(gs.is_subset_of(gl));
        const auto again = gs.members().elements();
        EXPECT_EQ(generate_sieve(cat, o, again), gs);
      }
    }
  }
}

TEST(RandomPosets, FiltersAndUltrafilters) {
  for (const auto& spec : random_posets(30, 4)) {
    const auto cat = category_of(spec);
    for (auto o : cat.object_ids()) {
      const auto lattice = enumerate_sieves(cat, o);
      const auto filters = enumerate_object_filters(cat, o);
      if (lattice.size() <= 10) {
        const auto brute = oracle::all_filters(cat, o);
        const std::set<oracle::Family> expected(brute.begin(), brute.end());
        std::set<oracle::Family> got;
        for (const auto& f : filters) got.insert(to_family(f));
        EXPECT_EQ(got, expected);
      }
      for (const auto& f : filters) {
        EXPECT_EQ(f, up_set(lattice, {sieve_intersection(cat, o, f)}));
        const auto u = extend_to_ultrafilter_at(cat, o, f);
        EXPECT_TRUE(family_subset(f, u));
        EXPECT_TRUE(is_ultrafilter_at(cat, o, u));
      }
      EXPECT_TRUE(audit_ultrafilter_primality(cat, o, 2).ok());
      EXPECT_TRUE(audit_ultrafilter_primality(cat, o, 3).ok());
    }
  }
}

TEST(RandomFrames, DownSetLatticesAreFramesWithValidTopologies) {
  for (const auto& p : random_posets(25, 3)) {
    const auto spec = generators::down_set_lattice(p);
    const auto frame = frame_of(spec);
    const auto& cat = frame.category();
    for (auto a : frame.elements())
      for (auto b : frame.elements())
        for (auto x : frame.elements()) {
          EXPECT_EQ(frame.leq(x, frame.implies(a, b)), frame.leq(frame.meet(x, a), b));
          EXPECT_EQ(frame.meet(a, frame.join(b, x)), frame.join(frame.meet(a, b), frame.meet(a, x)));
        }
    const auto j = canonical_topology(frame);
    EXPECT_TRUE(validate_topology(cat, j, TopologyLevel::full).ok());
    EXPECT_EQ(topology_to_filter(cat, j).dropped_empty_sieve, std::vector<ObjectId>{frame.object(frame.bottom())});
    for (auto c : frame.elements())
      for (const auto& s : j.at(frame.object(c))) EXPECT_TRUE(sieve_covers(frame, c, s));
  }
}

TEST(RandomFrames, AuditsHoldAtTopAndMatchBruteForce) {
  for (const auto& p : random_posets(10, 3)) {
    const auto frame = frame_of(generators::down_set_lattice(p));
    const auto& cat = frame.category();
    const auto top = frame.object(frame.top());
    const auto j = canonical_topology(frame);
    const oracle::Space space{cat, top, to_family(j.at(top))};
    const Point pt{cat.identity(top), top};
    EXPECT_TRUE(neighborhood_filter_check(cat, j, pt).ok());
    EXPECT_EQ(to_family(cover_neighborhoods(cat, j, pt).members), space.neighborhoods(pt.carrier));
    for (const auto& a : enumerate_sieves(cat, top))
      EXPECT_EQ(in_closure(cat, j, a, pt), space.in_closure(to_set(a), pt.carrier));
    for (const auto& f : enumerate_object_filters(cat, top)) {
      EXPECT_EQ(converges(cat, j, f, pt), space.converges(to_family(f), pt.carrier));
      EXPECT_EQ(is_cluster_point(cat, j, f, pt), space.cluster(to_family(f), pt.carrier));
    }
    EXPECT_TRUE(audit_theorem_cluster(cat, j, top).holds());
    EXPECT_TRUE(audit_theorem_closure(cat, j, top).holds());
  }
}

TEST(RandomDocuments, CanonicalFormIsStableUnderReordering) {
  std::mt19937 rng(kSeed + 2);
  for (const auto& spec : random_posets(20, 4)) {
    const auto cat = category_of(spec);
    auto category = cli::category_json(cat.describe());
    cli::Json filters = cli::Json::object();
    cli::Json topology = cli::Json::object();
    for (auto o : cat.object_ids()) {
      cli::Json family = cli::Json::array();
      for (const auto& s : enumerate_sieves(cat, o))
        if (rng() % 2) family.push_back(member_names(cat, s));
      filters[cat.object_name(o)] = family;
      topology[cat.object_name(o)] = cli::family_json(cat, {maximal_sieve(cat, o)});
    }
    const cli::Json doc{{"category", category},
                        {"topologies", {{"trivial_copy", topology}}},
                        {"filters", {{"f", filters}, {"b", {{"base", filters}, {"generate", true}}}}}};
    const auto canon = cli::serialize(cli::parse_document(doc)).dump(2);

    auto shuffled = doc;
    for (auto* arr : {&shuffled["category"]["morphisms"], &shuffled["category"]["composition"],
                      &shuffled["category"]["objects"]})
      std::shuffle(arr->begin(), arr->end(), rng);
    for (auto& [obj, family] : shuffled["filters"]["f"].items()) {
      std::shuffle(family.begin(), family.end(), rng);
      for (auto& s : family) std::shuffle(s.begin(), s.end(), rng);
    }
    const auto reparsed = cli::serialize(cli::parse_document(shuffled));
    EXPECT_EQ(reparsed["filters"]["f"], cli::Json::parse(canon)["filters"]["f"]);
    EXPECT_EQ(reparsed["category"], cli::Json::parse(canon)["category"]);
    EXPECT_EQ(cli::serialize(cli::parse_document(cli::Json::parse(canon))).dump(2), canon);
    EXPECT_NO_THROW(cli::Workspace::load(cli::parse_document(shuffled)));
  }
}
