#include <gtest/gtest.h>

#include "sievekit/convergence.hpp"
#include "sievekit/errors.hpp"
#include "test_support.hpp"

using namespace sievekit;
using namespace testing_support;

namespace {

struct Instance {
  std::string label;
  FiniteCategory cat;
  GrothendieckTopology j;
};

std::vector<Instance> pointed_instances() {
  std::vector<Instance> out;
  const auto pt = pointed_two();
  out.push_back({"PT/pointed", pt, corpus::pointed_two_topology(pt)});
  out.push_back({"PT/trivial", pt, trivial_topology(pt)});
  out.push_back({"PT/chaotic", pt, chaotic_topology(pt)});
  for (const auto& [label, spec] : {std::pair{"C2", corpus::chain2()}, std::pair{"C3", corpus::chain3()},
                                    std::pair{"B2", corpus::diamond()}}) {
    const auto frame = frame_of(spec);
    out.push_back({std::string(label) + "/canonical", frame.category(), canonical_topology(frame)});
    out.push_back({std::string(label) + "/trivial", frame.category(), trivial_topology(frame.category())});
  }
  return out;
}

oracle::Space space_of(const Instance& in, ObjectId o) { return {in.cat, o, to_family(in.j.at(o))}; }

class PointedTwo : public ::testing::Test {
 protected:
  FiniteCategory pt = pointed_two();
  GrothendieckTopology j = corpus::pointed_two_topology(pt);
  ObjectId c = pt.object_id("C");
  Sieve s1 = S(pt, "C", {"e0", "e1", "p0", "p1"});
  Sieve max_c = maximal_sieve(pt, c);
  Sieve gen_p0 = S(pt, "C", {"e0", "p0"});
  Sieve gen_p1 = S(pt, "C", {"e1", "p1"});
  Point p0 = point(pt, "p0");
  Point p1 = point(pt, "p1");
};

}  // namespace

TEST_F(PointedTwo, GNeighborhoods) {
  EXPECT_TRUE(is_g_neighborhood(pt, j, p0, s1));
  EXPECT_TRUE(is_g_neighborhood(pt, j, p0, max_c));
  EXPECT_FALSE(is_g_neighborhood(pt, j, p0, gen_p0));

  // Even when {e1,p1} is declared covering, it is no neighborhood of p0.
  auto adhoc = j;
  adhoc.covering[index(c)] = fam({gen_p1, s1, max_c});
  EXPECT_FALSE(g_neighborhood_by_search(pt, adhoc, p0, gen_p1));
  EXPECT_FALSE(is_g_neighborhood(pt, adhoc, p0, gen_p1));
  EXPECT_TRUE(is_g_neighborhood(pt, adhoc, p1, gen_p1));

  EXPECT_THROW(is_g_neighborhood(pt, j, p0, maximal_sieve(pt, pt.object_id("T"))), CodomainMismatch);
  EXPECT_EQ(g_neighborhoods(pt, j, p0), fam({s1, max_c}));
}

TEST_F(PointedTwo, NeighborhoodsOfSieve) {
  EXPECT_EQ(g_neighborhoods_of_sieve(pt, j, empty_sieve(pt, c)), j.at(c));
  EXPECT_EQ(g_neighborhoods_of_sieve(pt, j, gen_p0), fam({s1, max_c}));
  EXPECT_EQ(g_neighborhoods_of_sieve(pt, j, max_c), fam({max_c}));
}

TEST_F(PointedTwo, CoverNeighborhoods) {
  EXPECT_EQ(cover_neighborhoods(pt, j, p0).members, fam({s1, max_c}));
  const auto t = pt.object_id("T");
  const Point top{pt.identity(t), t};
  EXPECT_EQ(cover_neighborhoods(pt, j, top).members, fam({maximal_sieve(pt, t)}));
  EXPECT_EQ(cover_neighborhoods(pt, trivial_topology(pt), p1).members, fam({max_c}));
  EXPECT_TRUE(neighborhood_filter_check(pt, j, p0).ok());
  EXPECT_TRUE(neighborhood_filter_check(pt, trivial_topology(pt), p0).ok());
}

TEST_F(PointedTwo, Convergence) {
  EXPECT_FALSE(converges(pt, j, fam({max_c}), p0));
  EXPECT_TRUE(converges(pt, j, fam({s1, max_c}), p0));
  EXPECT_TRUE(converges(pt, j, fam({s1, max_c}), p1));
  EXPECT_TRUE(converges(pt, trivial_topology(pt), trivial_filter(pt), p0));
  EXPECT_FALSE(converges(pt, j, trivial_filter(pt), p0));
}

TEST_F(PointedTwo, Closure) {
  EXPECT_EQ(closure(pt, j, max_c), (std::vector<Point>{p0, p1}));
  EXPECT_EQ(closure(pt, j, gen_p0), (std::vector<Point>{p0, p1}));
  EXPECT_TRUE(closure(pt, j, empty_sieve(pt, c)).empty());
  EXPECT_EQ(closure(pt, chaotic_topology(pt), gen_p1), (std::vector<Point>{p1}));
}

TEST_F(PointedTwo, ClusterPoints) {
  EXPECT_TRUE(is_cluster_point(pt, j, fam({s1, max_c}), p0));
  const auto up_p0 = fam({gen_p0, s1, max_c});
  EXPECT_TRUE(is_cluster_point(pt, j, up_p0, p1));
  EXPECT_TRUE(is_cluster_point(pt, j, FilterBase{{fam({max_c}), fam({maximal_sieve(pt, pt.object_id("T"))})}}, p1));
  const auto trivial = trivial_topology(pt);
  for (const auto& f : enumerate_object_filters(pt, c)) {
    EXPECT_TRUE(is_cluster_point(pt, trivial, f, p0));
    EXPECT_TRUE(is_cluster_point(pt, trivial, f, p1));
  }
  EXPECT_FALSE(is_cluster_point(pt, chaotic_topology(pt), fam({gen_p1, s1, max_c}), p0));
}

TEST_F(PointedTwo, ClusterBase) {
  const auto cb = cluster_base(pt, j, fam({gen_p0, s1, max_c}), p1);
  EXPECT_FALSE(cb.failure);
  EXPECT_TRUE(family_contains(cb.family, gen_p0));
  const auto generated = filter_from_base_at(pt, c, cb.family);
  EXPECT_TRUE(converges(pt, j, generated, p1));

  EXPECT_EQ(cluster_base(pt, j, fam({max_c}), p0).family, g_neighborhoods(pt, j, p0));
  EXPECT_THROW(cluster_base(pt, chaotic_topology(pt), fam({gen_p1, s1, max_c}), p0), PreconditionViolation);
}

TEST(ClusterBase, DiamondTopPoint) {
  const auto frame = frame_of(corpus::diamond());
  const auto& cat = frame.category();
  const auto one = cat.object_id("1");
  const auto f = fam({S(cat, "1", {"0->1", "a->1", "b->1"}), maximal_sieve(cat, one)});
  const Point top{cat.identity(one), one};
  const auto cb = cluster_base(cat, canonical_topology(frame), f, top);
  EXPECT_FALSE(cb.failure);
  EXPECT_EQ(cb.family, f);
}

TEST_F(PointedTwo, Audits) {
  const auto cluster = audit_theorem_cluster(pt, j, c);
  EXPECT_TRUE(cluster.holds());
  EXPECT_EQ(cluster.filters, enumerate_object_filters(pt, c).size());
  EXPECT_EQ(cluster.cases.size(), cluster.filters * 2);

  const auto closure_audit = audit_theorem_closure(pt, j, c);
  EXPECT_TRUE(closure_audit.holds());
  for (const auto& row : closure_audit.cases) {
    if (*row.sieve == max_c) EXPECT_TRUE(row.lhs && row.rhs);
    if (row.sieve->empty()) EXPECT_FALSE(row.lhs || row.rhs);
    if (*row.sieve == gen_p0 && row.point == p1) {
      EXPECT_TRUE(row.lhs && row.rhs);
      ASSERT_TRUE(row.witness);
      EXPECT_TRUE(family_contains(*row.witness, gen_p0));
    }
  }

  const auto trivial = audit_theorem_cluster(pt, trivial_topology(pt), c);
  for (const auto& row : trivial.cases) EXPECT_TRUE(row.lhs && row.rhs);
}

TEST(Audits, DiamondAtTop) {
  const auto frame = frame_of(corpus::diamond());
  const auto& cat = frame.category();
  const auto audit = audit_theorem_cluster(cat, canonical_topology(frame), cat.object_id("1"));
  EXPECT_EQ(audit.filters, 5u);
  EXPECT_TRUE(audit.holds());
  EXPECT_TRUE(audit_theorem_closure(cat, canonical_topology(frame), cat.object_id("1")).holds());
}

TEST(Audits, NoPointsMeansEmptyClosure) {
  const auto frame = frame_of(corpus::diamond());
  const auto& cat = frame.category();
  const auto a = cat.object_id("a");
  EXPECT_TRUE(closure(cat, canonical_topology(frame), maximal_sieve(cat, a)).empty());
  const auto pp = parallel_pair();
  EXPECT_TRUE(closure(pp, trivial_topology(pp), maximal_sieve(pp, pp.object_id("Y"))).empty());
}

TEST(ConvergenceOracle, AgreesWithBruteForce) {
  for (const auto& in : pointed_instances()) {
    SCOPED_TRACE(in.label);
    for (auto o : in.cat.object_ids()) {
      const auto space = space_of(in, o);
      const auto lattice = enumerate_sieves(in.cat, o);
      const auto filters = enumerate_object_filters(in.cat, o);
      for (const auto& p : points(in.cat, o)) {
        for (const auto& v : lattice)
          EXPECT_EQ(is_g_neighborhood(in.cat, in.j, p, v), space.g_neighborhood(p.carrier, to_set(v)));
        EXPECT_EQ(to_family(cover_neighborhoods(in.cat, in.j, p).members), space.neighborhoods(p.carrier));
        EXPECT_TRUE(neighborhood_filter_check(in.cat, in.j, p).ok());
        for (const auto& a : lattice) EXPECT_EQ(in_closure(in.cat, in.j, a, p), space.in_closure(to_set(a), p.carrier));
        for (const auto& f : filters) {
          EXPECT_EQ(converges(in.cat, in.j, f, p), space.converges(to_family(f), p.carrier));
          EXPECT_EQ(is_cluster_point(in.cat, in.j, f, p), space.cluster(to_family(f), p.carrier));
        }
      }
    }
  }
}

TEST(ConvergenceProperties, HoldOnCorpus) {
  for (const auto& in : pointed_instances()) {
    SCOPED_TRACE(in.label);
    for (auto o : in.cat.object_ids()) {
      const auto lattice = enumerate_sieves(in.cat, o);
      const auto filters = enumerate_object_filters(in.cat, o);
      for (const auto& a : lattice) {
        const auto ca = closure(in.cat, in.j, a);
        for (const auto& b : lattice) {
          if (!a.is_subset_of(b)) continue;
          const auto cb = closure(in.cat, in.j, b);
          EXPECT_TRUE(std::includes(cb.begin(), cb.end(), ca.begin(), ca.end()));
        }
      }
      for (const auto& p : points(in.cat, o)) {
        const auto nbhd = cover_neighborhoods(in.cat, in.j, p).members;
        for (const auto& v : g_neighborhoods(in.cat, in.j, p)) EXPECT_TRUE(family_contains(nbhd, v));
        EXPECT_EQ(up_set(lattice, nbhd), nbhd);
        for (const auto& f : filters) {
          if (!converges(in.cat, in.j, f, p)) continue;
          EXPECT_TRUE(is_cluster_point(in.cat, in.j, f, p));
          for (const auto& g : filters)
            if (family_subset(f, g)) EXPECT_TRUE(converges(in.cat, in.j, g, p));
        }
      }
      const auto cluster = audit_theorem_cluster(in.cat, in.j, o);
      const auto closure_audit = audit_theorem_closure(in.cat, in.j, o);
      EXPECT_TRUE(cluster.holds());
      EXPECT_TRUE(closure_audit.holds());
    }
  }
}
