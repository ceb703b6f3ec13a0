#include "sievekit/cli/suite.hpp"

#include <algorithm>
#include <fstream>

#include "sievekit/convergence.hpp"

namespace sievekit::cli {

namespace {

struct Tally {
  std::size_t checks = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
};

class InstanceRun {
 public:
  InstanceRun(std::string name, Tally& tally) : tally_(tally) { out_["name"] = std::move(name); }

  Json& add(std::string check, bool ok, const std::string& topology = {}, const std::string& object = {}) {
    Json c{{"check", std::move(check)}, {"ok", ok}};
    if (!topology.empty()) c["topology"] = topology;
    if (!object.empty()) c["object"] = object;
    ++tally_.checks;
    if (!ok) ++tally_.failed;
    checks_.push_back(std::move(c));
    return checks_.back();
  }

  void skip(std::string check, const std::string& reason, const std::string& topology = {},
            const std::string& object = {}) {
    auto& c = add(std::move(check), true, topology, object);
    c["skipped"] = reason;
    ++tally_.skipped;
  }

  /// Runs `body`; a size guard hit turns the check into a skip.
  template <typename Fn>
  void guarded(const std::string& check, const std::string& topology, const std::string& object, Fn&& body) {
    try {
      body();
    } catch (const SizeGuardExceeded& e) {
      skip(check, e.what(), topology, object);
    }
  }

  Json finish() {
    out_["checks"] = std::move(checks_);
    return std::move(out_);
  }

 private:
  Tally& tally_;
  Json out_ = Json::object();
  Json checks_ = Json::array();
};

bool lattice_closed(const FiniteCategory& cat, ObjectId o, const SieveFamily& lattice) {
  if (!family_contains(lattice, empty_sieve(cat, o)) || !family_contains(lattice, maximal_sieve(cat, o))) return false;
  for (const auto& a : lattice) {
    for (const auto& b : lattice) {
      if (!family_contains(lattice, Sieve(o, a.members() | b.members()))) return false;
      if (!family_contains(lattice, Sieve(o, a.members() & b.members()))) return false;
    }
  }
  return true;
}

Json violations_json(const Report& r) { return report_json(r)["violations"]; }

void category_checks(InstanceRun& run, const FiniteCategory& cat, std::size_t guard) {
  for (auto o : cat.object_ids()) {
    const auto& name = cat.object_name(o);
    const auto lattice = enumerate_sieves(cat, o);
    run.add("sieve-lattice", lattice_closed(cat, o, lattice), {}, name)["sieves"] = lattice.size();
    for (auto [check, n] : {std::pair{"ultrafilter-prime", std::size_t{2}}, std::pair{"ultrafilter-finite-union", std::size_t{3}}}) {
      run.guarded(check, {}, name, [&] {
        const auto report = audit_ultrafilter_primality(cat, o, n, guard);
        auto& c = run.add(check, report.ok(), {}, name);
        if (!report.ok()) c["violations"] = violations_json(report);
      });
    }
  }
}

void topology_checks(InstanceRun& run, const FiniteCategory& cat, const std::string& tname,
                     const GrothendieckTopology& j, const Frame* frame, std::size_t guard) {
  const auto report = validate_topology(cat, j, TopologyLevel::full);
  auto& valid = run.add("topology-valid", report.ok(), tname);
  if (!report.ok()) {
    valid["violations"] = violations_json(report);
    return;
  }

  try {
    const auto tf = topology_to_filter(cat, j);
    const auto filter_report = is_filter(cat, tf.filter);
    Json dropped = Json::array();
    for (auto o : tf.dropped_empty_sieve) dropped.push_back(cat.object_name(o));
    run.add("as-filter", filter_report.ok(), tname)["dropped_empty_sieve"] = dropped;
    if (frame && tname == "canonical") {
      const bool once = tf.dropped_empty_sieve == std::vector<ObjectId>{frame->object(frame->bottom())};
      run.add("bottom-note-once", once, tname)["dropped_empty_sieve"] = dropped;
    }
  } catch (const ValidationError& e) {
    run.add("as-filter", true, tname)["undefined"] = violation_json(e.report().violations.front());
  }

  if (!terminal_object(cat)) {
    run.skip("points", "no terminal object", tname);
    return;
  }
  for (auto o : cat.object_ids()) {
    const auto& oname = cat.object_name(o);
    const auto pts = points(cat, o);
    if (pts.empty()) continue;
    const auto lattice = enumerate_sieves(cat, o);

    std::size_t triples = 0;
    try {
      for (const auto& p : pts)
        for (const auto& v : lattice) {
          is_g_neighborhood(cat, j, p, v);
          ++triples;
        }
      run.add("shortcut", true, tname, oname)["triples"] = triples;
    } catch (const InternalInconsistency& e) {
      run.add("shortcut", false, tname, oname)["detail"] = e.what();
    }

    Json failures = Json::array();
    for (const auto& p : pts) {
      const auto r = neighborhood_filter_check(cat, j, p);
      for (const auto& v : r.violations) {
        auto vj = violation_json(v);
        vj["point"] = point_json(cat, p);
        vj["reproduce"] = Json{
            {"filters", {{"neighborhoods", {{oname, family_json(cat, cover_neighborhoods(cat, j, p).members)}}}}}};
        failures.push_back(std::move(vj));
      }
    }
    auto& nf = run.add("neighborhood-filter", failures.empty(), tname, oname);
    nf["points"] = pts.size();
    if (!failures.empty()) nf["counterexamples"] = std::move(failures);

    for (const bool closure_audit : {false, true}) {
      const std::string check = closure_audit ? "closure-audit" : "cluster-audit";
      run.guarded(check, tname, oname, [&] {
        const auto audit = closure_audit ? audit_theorem_closure(cat, j, o, guard) : audit_theorem_cluster(cat, j, o, guard);
        auto& c = run.add(check, audit.holds(), tname, oname);
        c["filters"] = audit.filters;
        c["cases"] = audit.cases.size();
        if (!audit.holds()) {
          Json ces = Json::array();
          for (const auto& row : audit.counterexamples()) {
            Json ce{{"point", point_json(cat, row.point)}, {"lhs", row.lhs}, {"rhs", row.rhs}};
            if (row.sieve) {
              ce["sieve"] = sieve_json(cat, *row.sieve);
            } else {
              ce["filter"] = family_json(cat, row.filter);
            }
            ces.push_back(std::move(ce));
          }
          c["counterexamples"] = std::move(ces);
        }
      });
    }
  }
}

void frame_checks(InstanceRun& run, const Frame& frame, std::size_t guard) {
  const auto& cat = frame.category();
  const auto top = frame.object(frame.top());
  run.guarded("cover-vs-point-convergence", "canonical", cat.object_name(top), [&] {
    std::size_t agree = 0, disagree = 0;
    for (const auto& family : enumerate_object_filters(cat, top, guard)) {
      Filter f = trivial_filter(cat);
      f.sets[index(top)] = family;
      (compare_convergence_at_top(frame, f).agree() ? agree : disagree) += 1;
    }
    auto& c = run.add("cover-vs-point-convergence", true, "canonical", cat.object_name(top));
    c["agree"] = agree;
    c["disagree"] = disagree;
    c["informational"] = true;
  });
}

void run_workspace(InstanceRun& run, const Workspace& ws, std::vector<std::string> topologies, std::size_t guard) {
  const auto& cat = ws.category();
  run.add("category", true)["objects"] = cat.object_count();
  category_checks(run, cat, guard);
  std::sort(topologies.begin(), topologies.end());
  topologies.erase(std::unique(topologies.begin(), topologies.end()), topologies.end());
  for (const auto& t : topologies) topology_checks(run, cat, t, ws.topology(t), ws.frame(), guard);
  if (ws.frame()) frame_checks(run, *ws.frame(), guard);
}

Json builtin_instance(const std::string& name, const std::string& preset, std::vector<std::string> extra,
                      Tally& tally, std::size_t guard) {
  InstanceRun run(name, tally);
  const auto ws = Workspace::load(preset_document(preset));
  auto topologies = ws.topology_names();
  topologies.insert(topologies.end(), extra.begin(), extra.end());
  run_workspace(run, ws, std::move(topologies), guard);
  return run.finish();
}

Json rejected_frame(Tally& tally) {
  InstanceRun run("N5", tally);
  try {
    Workspace::load(preset_document("frame:N5"));
    run.add("frame-rejected", false)["detail"] = "pentagon accepted as a frame";
  } catch (const ValidationError& e) {
    const auto& v = e.report().violations.front();
    run.add("frame-rejected", v.law == "distributivity")["violation"] = violation_json(v);
  }
  run_workspace(run, Workspace::load(preset_document("poset:N5")), {"trivial"}, kDefaultSieveGuard);
  return run.finish();
}

Json seed_instance(const std::filesystem::path& file, Tally& tally, std::size_t guard) {
  InstanceRun run(file.filename().string(), tally);
  try {
    std::ifstream in(file);
    const auto ws = Workspace::load(parse_document(Json::parse(in)));
    auto topologies = ws.topology_names();
    topologies.push_back("trivial");
    run_workspace(run, ws, std::move(topologies), guard);
  } catch (const Error& e) {
    run.add("load", false)["detail"] = e.what();
  } catch (const Json::exception& e) {
    run.add("load", false)["detail"] = e.what();
  }
  return run.finish();
}

}  // namespace

QueryResult run_corpus_suite(const SuiteOptions& options) {
  Tally tally;
  Json instances = Json::array();
  const auto g = options.guard;
  instances.push_back(builtin_instance("C2", "frame:C2", {"trivial"}, tally, g));
  instances.push_back(builtin_instance("C3", "frame:C3", {"trivial"}, tally, g));
  instances.push_back(builtin_instance("B2", "frame:B2", {"trivial"}, tally, g));
  instances.push_back(rejected_frame(tally));
  instances.push_back(builtin_instance("PP", "parallel-pair", {"trivial", "chaotic"}, tally, g));
  instances.push_back(builtin_instance("M1", "monoid", {"trivial", "chaotic"}, tally, g));
  instances.push_back(builtin_instance("PT", "pointed-two", {"trivial", "chaotic"}, tally, g));

  if (options.seed_corpus) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(*options.seed_corpus))
      if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
    for (const auto& f : files) instances.push_back(seed_instance(f, tally, g));
  }

  Json body{{"op", "corpus"}, {"instances", std::move(instances)}};
  body["summary"] = {{"instances", body["instances"].size()},
                     {"checks", tally.checks},
                     {"failed", tally.failed},
                     {"skipped", tally.skipped},
                     {"ok", tally.failed == 0}};
  return {std::move(body), tally.failed != 0};
}

}  // namespace sievekit::cli
