// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sievekit/cli/app.hpp"
#include "sievekit/cli/document.hpp"
#include "sievekit/cli/json_io.hpp"
#include "sievekit/convergence.hpp"
#include "sievekit/corpus.hpp"
#include "sievekit/frame.hpp"

using namespace sievekit;

namespace {

struct Entry {
  std::string name;
  FiniteCategory cat;
  std::optional<Frame> frame;
  std::vector<std::pair<std::string, GrothendieckTopology>> topologies;
};

std::vector<Entry> corpus_entries() {
  std::vector<Entry> out;
  for (const auto& spec : {corpus::chain2(), corpus::chain3(), corpus::diamond()}) {
    const auto order = spec.order();
    auto frame = Frame::from_poset(spec.elements, order);
    const auto& cat = frame.category();
    out.push_back({spec.name, cat, frame,
                   {{"canonical", canonical_topology(frame)}, {"trivial", trivial_topology(cat)},
                    {"chaotic", chaotic_topology(cat)}}});
  }
  {
    const auto spec = corpus::pentagon();
    const auto order = spec.order();
    auto cat = from_poset(spec.elements, order);
    out.push_back({"N5", cat, std::nullopt, {{"trivial", trivial_topology(cat)}, {"chaotic", chaotic_topology(cat)}}});
  }
  for (auto [name, desc] : {std::pair{"PP", corpus::parallel_pair()}, std::pair{"M1", corpus::idempotent_monoid()}}) {
    auto cat = FiniteCategory::validate(desc);
    out.push_back({name, cat, std::nullopt, {{"trivial", trivial_topology(cat)}, {"chaotic", chaotic_topology(cat)}}});
  }
  auto pt = FiniteCategory::validate(corpus::pointed_two());
  out.push_back({"PT", pt, std::nullopt,
                 {{"pointed", corpus::pointed_two_topology(pt)}, {"trivial", trivial_topology(pt)},
                  {"chaotic", chaotic_topology(pt)}}});
  return out;
}

oracle::Set to_set(const Sieve& s) {
  const auto v = s.members().elements();
  return {v.begin(), v.end()};
}

oracle::Family to_family(const SieveFamily& f) {
  oracle::Family out;
  for (const auto& s : f) out.insert(to_set(s));
  return out;
}

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (condition || !ok) {
      ok = ok && condition;
      return;
    }
    ok = false;
    detail << "first failure: " << what << "; ";
  }
};

using Criterion = std::function<void(Outcome&)>;

void sieve_lattice_completeness(Outcome& out) {
  std::mt19937_64 rng(7);
  std::size_t exhaustive = 0, sampled = 0;
  for (const auto& e : corpus_entries()) {
    for (auto o : e.cat.object_ids()) {
      const auto lattice = enumerate_sieves(e.cat, o);
      auto check = [&](std::uint64_t mask) {
        MorphismSet join(e.cat.morphism_count()), meet = maximal_sieve(e.cat, o).members();
        for (std::size_t i = 0; i < lattice.size(); ++i) {
          if (!(mask >> i & 1)) continue;
          join |= lattice[i].members();
          meet &= lattice[i].members();
        }
        out.require(family_contains(lattice, Sieve(o, join)) && family_contains(lattice, Sieve(o, meet)),
                    e.name + ":" + e.cat.object_name(o) + " not closed");
      };
      if (lattice.size() <= 6) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << lattice.size()); ++mask) check(mask);
        ++exhaustive;
      } else {
        std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << lattice.size()) - 1);
        for (int i = 0; i < 1000; ++i) check(pick(rng));
        ++sampled;
      }
    }
  }
  out.detail << exhaustive << " objects exhaustive, " << sampled << " sampled (1000 subsets each)";
}

void sieve_counts(Outcome& out) {
  std::size_t objects = 0;
  for (const auto& e : corpus_entries()) {
    for (auto o : e.cat.object_ids()) {
      const auto lattice = enumerate_sieves(e.cat, o);
      const auto brute = oracle::all_sieves(e.cat, o);
      out.require(to_family(lattice) == brute && lattice.size() == brute.size(),
                  e.name + ":" + e.cat.object_name(o) + " disagrees with brute force");
      ++objects;
      const auto key = e.name + ":" + e.cat.object_name(o);
      const std::map<std::string, std::size_t> expected{{"B2:1", 6}, {"PP:Y", 5}, {"M1:*", 3}};
      if (auto it = expected.find(key); it != expected.end())
        out.require(brute.size() == it->second && lattice.size() == it->second, key + " count");
    }
  }
  out.detail << objects << " objects agree with the brute-force oracle; B2:1=6, PP:Y=5, M1:*=3";
}

void pullback_correctness(Outcome& out) {
  std::size_t pairs = 0, composites = 0;
  for (const auto& e : corpus_entries()) {
    const auto& cat = e.cat;
    for (auto h : cat.morphism_ids()) {
      for (const auto& s : enumerate_sieves(cat, cat.cod(h))) {
        const auto hs = pullback_sieve(cat, h, s);
        out.require(to_set(hs) == oracle::pullback(cat, h, to_set(s)), e.name + ": pullback along " + cat.morphism_name(h));
        ++pairs;
        for (auto f : cat.into(cat.dom(h))) {
          out.require(pullback_sieve(cat, *cat.compose(h, f), s) == pullback_sieve(cat, f, hs),
                      e.name + ": functoriality at " + cat.morphism_name(h) + "," + cat.morphism_name(f));
          ++composites;
        }
      }
    }
  }
  out.detail << pairs << " (h, S) pairs, " << composites << " composites";
}

void generated_filters(Outcome& out) {
  std::size_t bases = 0, subbases = 0;
  for (const auto& e : corpus_entries()) {
    for (auto o : e.cat.object_ids()) {
      const auto lattice = enumerate_sieves(e.cat, o);
      if (lattice.size() > kDefaultSieveGuard || lattice.size() > 16) continue;
      const auto filters = enumerate_object_filters(e.cat, o);
      for (std::uint32_t mask = 0; mask < (1u << lattice.size()); ++mask) {
        SieveFamily candidate;
        for (std::size_t i = 0; i < lattice.size(); ++i)
          if (mask >> i & 1) candidate.push_back(lattice[i]);
        std::optional<SieveFamily> least;
        for (const auto& f : filters)
          if (family_subset(candidate, f) && (!least || family_subset(f, *least))) least = f;
        const auto where = e.name + ":" + e.cat.object_name(o);
        if (!check_base_at(e.cat, o, candidate)) {
          const auto g = filter_from_base_at(e.cat, o, candidate);
          out.require(!check_filter_at(e.cat, o, g) && oracle::is_filter(e.cat, o, to_family(g)), where + " base output");
          out.require(least && g == *least, where + " base not least");
          ++bases;
        }
        if (!check_subbase_at(e.cat, o, candidate)) {
          const auto g = filter_from_subbase_at(e.cat, o, candidate);
          out.require(!check_filter_at(e.cat, o, g) && oracle::is_filter(e.cat, o, to_family(g)), where + " subbase output");
          out.require(least && g == *least, where + " subbase not least");
          ++subbases;
        }
      }
    }
  }
  out.detail << bases << " bases, " << subbases << " subbases";
}

void ultrafilters(Outcome& out) {
  std::size_t filters = 0, ultras = 0;
  for (const auto& e : corpus_entries()) {
    for (auto o : e.cat.object_ids()) {
      const auto where = e.name + ":" + e.cat.object_name(o);
      for (const auto& f : enumerate_object_filters(e.cat, o)) {
        ++filters;
        const auto u = extend_to_ultrafilter_at(e.cat, o, f);
        out.require(family_subset(f, u) && is_ultrafilter_at(e.cat, o, u), where + " extension");
        if (!is_ultrafilter_at(e.cat, o, f)) continue;
        ++ultras;
        out.require(!check_prime(e.cat, o, f), where + " prime");
        for (std::size_t n = 1; n <= 3; ++n)
          out.require(!check_prime_finite_union(e.cat, o, f, n), where + " finite union n=" + std::to_string(n));
      }
    }
  }
  out.detail << filters << " filters extended, " << ultras << " ultrafilters prime for n <= 3";
}

void topology_validity(Outcome& out) {
  std::size_t defined = 0, undefined = 0;
  for (const auto& e : corpus_entries()) {
    for (const auto& [name, j] : e.topologies) {
      const auto where = e.name + "/" + name;
      const auto report = validate_topology(e.cat, j, TopologyLevel::full);
      if (name == "pointed" || name == "canonical") out.require(report.ok(), where + " invalid");
      if (!report.ok()) continue;
      try {
        const auto tf = topology_to_filter(e.cat, j);
        out.require(is_filter(e.cat, tf.filter).ok(), where + " filter output");
        if (e.frame && name == "canonical")
          out.require(tf.dropped_empty_sieve == std::vector<ObjectId>{e.frame->object(e.frame->bottom())},
                      where + " bottom note not exactly once");
        ++defined;
      } catch (const ValidationError&) {
        ++undefined;
      }
    }
  }
  out.detail << defined << " topology filters valid, " << undefined << " undefined (disjoint covers); "
             << "frame bottoms reported once each";
}

template <typename Fn>
void for_each_point(Fn&& fn) {
  for (const auto& e : corpus_entries()) {
    if (!terminal_object(e.cat)) continue;
    for (const auto& [name, j] : e.topologies)
      for (auto o : e.cat.object_ids())
        for (const auto& p : points(e.cat, o)) fn(e, name, j, o, p);
  }
}

void shortcut_equivalence(Outcome& out) {
  std::size_t triples = 0;
  for_each_point([&](const Entry& e, const std::string& name, const GrothendieckTopology& j, ObjectId o, const Point& p) {
    for (const auto& v : enumerate_sieves(e.cat, o)) {
      out.require(g_neighborhood_by_search(e.cat, j, p, v) == g_neighborhood_by_membership(j, p, v),
                  e.name + "/" + name + " at " + e.cat.morphism_name(p.carrier));
      ++triples;
    }
  });
  out.detail << triples << " (topology, point, sieve) triples";
}

void neighborhood_filters(Outcome& out) {
  std::size_t checked = 0;
  for_each_point([&](const Entry& e, const std::string& name, const GrothendieckTopology& j, ObjectId o, const Point& p) {
    const auto report = neighborhood_filter_check(e.cat, j, p);
    ++checked;
    if (report.ok()) return;
    cli::Json doc = cli::Json::object();
    doc["category"] = cli::category_json(e.cat.describe());
    doc["filters"]["neighborhoods"][e.cat.object_name(o)] =
        cli::family_json(e.cat, cover_neighborhoods(e.cat, j, p).members);
    std::cout << "counterexample: " << doc.dump() << "\n";
    out.require(false, e.name + "/" + name + " at " + e.cat.morphism_name(p.carrier));
  });
  out.detail << checked << " (topology, point) pairs";
}

void equivalence_audits(Outcome& out) {
  const auto entries = corpus_entries();
  std::size_t rows = 0;
  for (const auto& [entry, tname, obj] : {std::tuple{"PT", "pointed", "C"}, std::tuple{"B2", "canonical", "1"}}) {
    const auto& e = *std::find_if(entries.begin(), entries.end(), [&](const Entry& x) { return x.name == entry; });
    const auto& j = std::find_if(e.topologies.begin(), e.topologies.end(), [&](const auto& t) { return t.first == tname; })->second;
    const auto o = e.cat.object_id(obj);
    const oracle::Space space{e.cat, o, to_family(j.at(o))};
    const auto brute_filters = oracle::all_filters(e.cat, o);
    const auto where = std::string(entry) + " at " + obj;

    const auto cluster = audit_theorem_cluster(e.cat, j, o);
    out.require(cluster.holds(), where + " cluster verdict");
    out.require(cluster.filters == brute_filters.size(), where + " filter count");
    for (const auto& row : cluster.cases) {
      const auto f = to_family(row.filter);
      bool finer = false;
      for (const auto& g : brute_filters)
        finer = finer || (std::includes(g.begin(), g.end(), f.begin(), f.end()) && space.converges(g, row.point.carrier));
      out.require(row.lhs == space.cluster(f, row.point.carrier) && row.rhs == finer, where + " cluster row");
      ++rows;
    }

    const auto closure_audit = audit_theorem_closure(e.cat, j, o);
    out.require(closure_audit.holds(), where + " closure verdict");
    for (const auto& row : closure_audit.cases) {
      const auto a = to_set(*row.sieve);
      bool some = false;
      for (const auto& g : brute_filters) some = some || (g.count(a) && space.converges(g, row.point.carrier));
      out.require(row.lhs == space.in_closure(a, row.point.carrier) && row.rhs == some, where + " closure row");
      ++rows;
    }
  }
  out.detail << "both audits hold on PT at C and B2 at 1; " << rows << " rows match the brute-force evaluator";
}

void frame_example(Outcome& out) {
  const auto spec = corpus::diamond();
  const auto order = spec.order();
  const auto frame = Frame::from_poset(spec.elements, order);
  const auto& cat = frame.category();
  const auto one = cat.object_id("1");
  auto sieve = [&](std::vector<std::string> names) { return sieve_from_names(cat, one, names); };
  const auto max = maximal_sieve(cat, one);
  const auto abc = sieve({"0->1", "a->1", "b->1"});
  const auto oa = sieve({"0->1", "a->1"});

  auto filter_with = [&](SieveFamily family) {
    Filter f = trivial_filter(cat);
    normalize(family);
    f.sets[index(one)] = std::move(family);
    return f;
  };
  out.require(frame_cover_converges(frame, filter_with({max, abc}), frame.element("1")), "F(1) should converge");
  out.require(!frame_cover_converges(frame, filter_with({max, abc, oa}), frame.element("1")),
              "F(1) with {0,a} should not converge");
  SieveFamily expected{abc, max};
  normalize(expected);
  out.require(canonical_topology(frame).at(one) == expected, "J(1)");
  out.detail << "{max, {0,a,b}} converges, adding {0,a} does not, J(1) = {{0,a,b}, max}";
}

void determinism(Outcome& out) {
  std::ostringstream a, b, err;
  const int ca = cli::run({"corpus"}, a, err);
  const int cb = cli::run({"corpus"}, b, err);
  out.require(a.str() == b.str(), "corpus reports differ");
  out.require(ca == cb, "exit codes differ");
  out.detail << a.str().size() << " bytes, identical across two runs";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Criterion>> criteria{
      {"sieve-lattice completeness", sieve_lattice_completeness},
      {"sieve counts match the oracle", sieve_counts},
      {"pullback correctness and functoriality", pullback_correctness},
      {"base and subbase generate least filters", generated_filters},
      {"ultrafilter extension and primality", ultrafilters},
      {"topology validity", topology_validity},
      {"neighborhood shortcut equivalence", shortcut_equivalence},
      {"neighborhood systems are filters", neighborhood_filters},
      {"cluster and closure equivalence audits", equivalence_audits},
      {"frame cover-convergence example", frame_example},
      {"corpus report determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.ok = false;
      out.detail << "exception: " << e.what();
    }
    if (!out.ok) ++failed;
    std::printf("%s %2zu %s: %s\n", out.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, out.detail.str().c_str());
  }
  return failed;
}
