#include "sievekit/cli/queries.hpp"

#include <algorithm>

#include "sievekit/convergence.hpp"

namespace sievekit::cli {

namespace {

std::string string_field(const Json& q, const char* key, const std::string& pointer) {
  if (!q.contains(key)) throw SchemaError(pointer, std::string("query needs \"") + key + "\"");
  return q.at(key).get<std::string>();
}

ObjectId object_field(const Workspace& ws, const Json& q, const std::string& pointer) {
  const auto name = string_field(q, "object", pointer);
  const auto o = ws.category().find_object(name);
  if (!o) throw SchemaError(pointer_join(pointer, "object"), "unknown object '" + name + "'");
  return *o;
}

MorphismId morphism_field(const Workspace& ws, const Json& q, const char* key, const std::string& pointer) {
  const auto name = string_field(q, key, pointer);
  const auto m = ws.category().find_morphism(name);
  if (!m) throw SchemaError(pointer_join(pointer, key), "unknown morphism '" + name + "'");
  return *m;
}

Point point_field(const Workspace& ws, const Json& q, const std::string& pointer) {
  const auto& cat = ws.category();
  const auto m = morphism_field(ws, q, "point", pointer);
  const auto pts = points(cat, cat.cod(m));
  const Point p{m, cat.cod(m)};
  if (std::find(pts.begin(), pts.end(), p) == pts.end())
    throw SchemaError(pointer_join(pointer, "point"),
                      "'" + cat.morphism_name(m) + "' is not a point (its domain is not the terminal object)");
  return p;
}

/// "sieve" must already be a sieve; "generators" are closed up first.
Sieve sieve_field(const Workspace& ws, const Json& q, const std::string& pointer,
                  std::optional<ObjectId> fallback = std::nullopt) {
  const auto& cat = ws.category();
  const bool strict = q.contains("sieve");
  const char* key = strict ? "sieve" : "generators";
  if (!q.contains(key)) throw SchemaError(pointer, "query needs \"sieve\" or \"generators\"");
  const auto names = q.at(key).get<NameSieve>();
  const auto at = pointer_join(pointer, key);

  std::optional<ObjectId> obj = fallback;
  if (q.contains("object")) obj = object_field(ws, q, pointer);
  if (!obj) {
    if (names.empty()) throw SchemaError(at, "an empty sieve needs an \"object\"");
    const auto first = cat.find_morphism(names.front());
    if (!first) throw SchemaError(pointer_join(at, 0), "unknown morphism '" + names.front() + "'");
    obj = cat.cod(*first);
  }
  auto raw = ws.resolve_sieve(*obj, names, at);
  if (!strict) {
    const auto gens = raw.members().elements();
    return generate_sieve(cat, *obj, gens);
  }
  if (!is_sieve(cat, *obj, raw.members()))
    throw SchemaError(at, "not a sieve: not closed under precomposition (use \"generators\" to close it)");
  return raw;
}

struct NamedTopology {
  std::string name;
  GrothendieckTopology j;
  Report report;
};

/// Audits pass `require_valid = false`: they examine whatever they are given
/// and report the topology's own violations beside the verdict.
NamedTopology topology_field(const Workspace& ws, const Json& q, const QueryOptions& options,
                             const std::string& pointer, bool require_valid = true) {
  std::string name;
  if (q.contains("topology")) {
    name = q.at("topology").get<std::string>();
  } else if (options.topology) {
    name = *options.topology;
  } else {
    name = ws.default_topology();
  }
  if (!ws.has_topology(name)) throw SchemaError(pointer_join(pointer, "topology"), "unknown topology '" + name + "'");
  auto j = ws.topology(name);
  auto report = validate_topology(ws.category(), j, options.level);
  if (!report.ok() && require_valid) {
    const auto what = "topology '" + name + "' is invalid: " + describe(report.violations.front());
    throw ValidationError(what, std::move(report));
  }
  return {name, std::move(j), std::move(report)};
}

std::string filter_field(const Workspace& ws, const Json& q, const std::string& pointer) {
  const auto name = string_field(q, "filter", pointer);
  if (!ws.has_filter(name)) throw SchemaError(pointer_join(pointer, "filter"), "undeclared filter '" + name + "'");
  return name;
}

Json points_json(const FiniteCategory& cat, const std::vector<Point>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(point_json(cat, p));
  return out;
}

/// A document fragment that replays a single finding when merged into the
/// document it came from.
Json reproducer(const FiniteCategory& cat, ObjectId obj, const std::optional<SieveFamily>& filter, Json query) {
  Json out = Json::object();
  if (filter) {
    out["filters"] = {{"counterexample", {{cat.object_name(obj), family_json(cat, *filter)}}}};
    query["filter"] = "counterexample";
  }
  out["queries"] = Json::array({std::move(query)});
  return out;
}

QueryResult sieves_query(const Workspace& ws, const Json& q, const std::string& pointer) {
  const auto& cat = ws.category();
  const auto o = object_field(ws, q, pointer);
  const auto lattice = enumerate_sieves(cat, o);
  return {{{"object", cat.object_name(o)}, {"count", lattice.size()}, {"sieves", family_json(cat, lattice)}}};
}

QueryResult pullback_query(const Workspace& ws, const Json& q, const std::string& pointer) {
  const auto& cat = ws.category();
  const auto h = morphism_field(ws, q, "morphism", pointer);
  const auto s = sieve_field(ws, q, pointer, cat.cod(h));
  if (s.codomain() != cat.cod(h))
    throw SchemaError(pointer, "sieve lives on '" + cat.object_name(s.codomain()) + "' but '" +
                                   cat.morphism_name(h) + "' ends at '" + cat.object_name(cat.cod(h)) + "'");
  return {{{"morphism", cat.morphism_name(h)},
           {"sieve", sieve_json(cat, s)},
           {"object", cat.object_name(cat.dom(h))},
           {"pullback", sieve_json(cat, pullback_sieve(cat, h, s))}}};
}

QueryResult filter_gen_query(const Workspace& ws, const Json& q, const std::string& pointer) {
  const auto& cat = ws.category();
  const auto name = filter_field(ws, q, pointer);
  return {{{"filter", name},
           {"kind", kind_name(ws.filter_decl(name).kind)},
           {"input", assignment_json(cat, ws.filter_sets(name))},
           {"generated", assignment_json(cat, ws.filter(name).sets)}}};
}

QueryResult ultra_query(const Workspace& ws, const Json& q, const QueryOptions& options, const std::string& pointer) {
  const auto& cat = ws.category();
  const auto name = filter_field(ws, q, pointer);
  const auto f = ws.filter(name);
  return {{{"filter", name},
           {"is_ultrafilter", is_ultrafilter(cat, f, options.guard)},
           {"ultrafilter", assignment_json(cat, extend_to_ultrafilter(cat, f, options.guard).sets)}}};
}

QueryResult converge_query(const Workspace& ws, const Json& q, const QueryOptions& options,
                           const std::string& pointer) {
  const auto& cat = ws.category();
  const auto name = filter_field(ws, q, pointer);
  const auto p = point_field(ws, q, pointer);
  const auto t = topology_field(ws, q, options, pointer);
  const auto f = ws.filter(name);
  const auto system = cover_neighborhoods(cat, t.j, p);
  SieveFamily missing;
  for (const auto& n : system.members)
    if (!family_contains(f.at(p.target), n)) missing.push_back(n);
  return {{{"filter", name},
           {"point", point_json(cat, p)},
           {"object", cat.object_name(p.target)},
           {"topology", t.name},
           {"converges", converges(cat, t.j, f, p)},
           {"neighborhoods", family_json(cat, system.members)},
           {"missing", family_json(cat, missing)}}};
}

QueryResult closure_query(const Workspace& ws, const Json& q, const QueryOptions& options,
                          const std::string& pointer) {
  const auto& cat = ws.category();
  const auto a = sieve_field(ws, q, pointer);
  const auto t = topology_field(ws, q, options, pointer);
  return {{{"object", cat.object_name(a.codomain())},
           {"sieve", sieve_json(cat, a)},
           {"topology", t.name},
           {"closure", points_json(cat, closure(cat, t.j, a))}}};
}

QueryResult cluster_query(const Workspace& ws, const Json& q, const QueryOptions& options,
                          const std::string& pointer) {
  const auto& cat = ws.category();
  const auto name = filter_field(ws, q, pointer);
  const auto p = point_field(ws, q, pointer);
  const auto t = topology_field(ws, q, options, pointer);
  const auto f = ws.filter(name);
  const auto& family = f.at(p.target);
  Json body{{"filter", name}, {"point", point_json(cat, p)}, {"topology", t.name}};
  const bool cluster = is_cluster_point(cat, t.j, family, p);
  body["cluster_point"] = cluster;
  body["missed"] = nullptr;
  for (const auto& a : family) {
    if (!in_closure(cat, t.j, a, p)) {
      body["missed"] = sieve_json(cat, a);
      break;
    }
  }
  if (cluster) {
    const auto cb = cluster_base(cat, t.j, family, p);
    body["cluster_base"] = family_json(cat, cb.family);
    body["base_failure"] = cb.failure ? violation_json(*cb.failure) : Json(nullptr);
  }
  return {std::move(body)};
}

Json audit_rows(const FiniteCategory& cat, const EquivalenceAudit& audit, bool closure_audit) {
  Json rows = Json::array();
  for (const auto& c : audit.cases) {
    Json row;
    if (closure_audit) {
      row["sieve"] = sieve_json(cat, *c.sieve);
    } else {
      row["filter"] = family_json(cat, c.filter);
    }
    row["point"] = point_json(cat, c.point);
    row[closure_audit ? "in_closure" : "cluster_point"] = c.lhs;
    row[closure_audit ? "converging_filter_containing_sieve" : "finer_converging_filter"] = c.rhs;
    row["witness"] = c.witness ? family_json(cat, *c.witness) : Json(nullptr);
    rows.push_back(std::move(row));
  }
  return rows;
}

QueryResult audit_query(const Workspace& ws, const Json& q, const QueryOptions& options, const std::string& pointer) {
  const auto& cat = ws.category();
  const auto raw = string_field(q, "audit", pointer);
  const auto id = audit_id(raw);
  if (!id) throw SchemaError(pointer_join(pointer, "audit"), "unknown audit '" + raw + "'");
  const auto obj = object_field(ws, q, pointer);
  Json body{{"audit", *id}, {"object", cat.object_name(obj)}};
  Json counterexamples = Json::array();

  if (*id == "prime" || *id == "finite-union") {
    const std::size_t n = *id == "prime" ? 2 : (q.contains("n") ? q.at("n").get<std::size_t>() : options.union_size);
    const auto report = audit_ultrafilter_primality(cat, obj, n, options.guard);
    body["n"] = n;
    for (const auto& v : report.violations) {
      Json ce = violation_json(v);
      SieveFamily u;
      for (const auto& names : v.witnesses.front().sieves)
        u.push_back(ws.resolve_sieve(obj, names, pointer));
      normalize(u);
      ce["reproduce"] = reproducer(cat, obj, u, {{"op", "ultra"}});
      counterexamples.push_back(std::move(ce));
    }
  } else {
    const auto t = topology_field(ws, q, options, pointer, false);
    body["topology"] = t.name;
    body["topology_check"] = report_json(t.report);
    if (*id == "neighborhood-filter") {
      Json rows = Json::array();
      for (const auto& p : points(cat, obj)) {
        const auto report = neighborhood_filter_check(cat, t.j, p);
        const auto system = cover_neighborhoods(cat, t.j, p);
        rows.push_back({{"point", point_json(cat, p)},
                        {"neighborhoods", family_json(cat, system.members)},
                        {"ok", report.ok()}});
        for (const auto& v : report.violations) {
          Json ce = violation_json(v);
          ce["point"] = point_json(cat, p);
          Json fragment{{"filters", {{"neighborhoods", {{cat.object_name(obj), family_json(cat, system.members)}}}}}};
          ce["reproduce"] = fragment;
          counterexamples.push_back(std::move(ce));
        }
      }
      body["cases"] = std::move(rows);
    } else {
      const bool closure_audit = *id == "closure";
      const auto audit = closure_audit ? audit_theorem_closure(cat, t.j, obj, options.guard)
                                       : audit_theorem_cluster(cat, t.j, obj, options.guard);
      body["filters"] = audit.filters;
      body["cases"] = audit_rows(cat, audit, closure_audit);
      for (const auto& c : audit.counterexamples()) {
        Json ce{{"point", point_json(cat, c.point)}, {"lhs", c.lhs}, {"rhs", c.rhs}};
        if (closure_audit) {
          ce["sieve"] = sieve_json(cat, *c.sieve);
          ce["reproduce"] = reproducer(cat, obj, std::nullopt,
                                       {{"op", "closure"},
                                        {"object", cat.object_name(obj)},
                                        {"sieve", sieve_json(cat, *c.sieve)},
                                        {"topology", t.name}});
        } else {
          ce["filter"] = family_json(cat, c.filter);
          ce["reproduce"] = reproducer(cat, obj, c.filter,
                                       {{"op", "cluster"}, {"point", point_json(cat, c.point)}, {"topology", t.name}});
        }
        counterexamples.push_back(std::move(ce));
      }
    }
  }
  body["holds"] = counterexamples.empty();
  body["counterexamples"] = std::move(counterexamples);
  const bool failed = !body["holds"].get<bool>();
  return {std::move(body), failed};
}

}  // namespace

std::optional<std::string> audit_id(std::string_view id) {
  for (const char* known : {"neighborhood-filter", "cluster", "closure", "prime", "finite-union"})
    if (id == known) return std::string(known);
  return std::nullopt;
}

QueryResult run_query(const Workspace& ws, const Json& query, const QueryOptions& options,
                      const std::string& pointer) {
  const auto op = string_field(query, "op", pointer);
  QueryResult r;
  if (op == "sieves") {
    r = sieves_query(ws, query, pointer);
  } else if (op == "pullback") {
    r = pullback_query(ws, query, pointer);
  } else if (op == "filter-gen") {
    r = filter_gen_query(ws, query, pointer);
  } else if (op == "ultra") {
    r = ultra_query(ws, query, options, pointer);
  } else if (op == "converge") {
    r = converge_query(ws, query, options, pointer);
  } else if (op == "closure") {
    r = closure_query(ws, query, options, pointer);
  } else if (op == "cluster") {
    r = cluster_query(ws, query, options, pointer);
  } else if (op == "audit") {
    r = audit_query(ws, query, options, pointer);
  } else {
    throw SchemaError(pointer_join(pointer, "op"), "unknown query op '" + op + "'");
  }
  r.body["op"] = op;
  return r;
}

QueryResult validate_document(const WorkspaceDocument& doc, const QueryOptions& options) {
  Json body{{"op", "validate"}};
  std::optional<Workspace> ws;
  try {
    ws = Workspace::load(doc);
    body["category"] = report_json({});
  } catch (const ValidationError& e) {
    body["category"] = report_json(e.report());
    body["ok"] = false;
    return {std::move(body), true};
  }
  const auto& cat = ws->category();
  bool ok = true;

  Json topologies = Json::object();
  for (const auto& name : ws->topology_names()) {
    const auto j = ws->topology(name);
    const auto report = validate_topology(cat, j, options.level);
    Json entry = report_json(report);
    entry["level"] = options.level == TopologyLevel::full ? "full" : "basic";
    if (validate_topology(cat, j, TopologyLevel::basic).ok()) {
      try {
        const auto tf = topology_to_filter(cat, j);
        Json dropped = Json::array();
        for (auto o : tf.dropped_empty_sieve) dropped.push_back(cat.object_name(o));
        entry["as_filter"] = {{"dropped_empty_sieve", dropped}};
      } catch (const ValidationError& e) {
        entry["as_filter"] = {{"undefined", violation_json(e.report().violations.front())}};
      } catch (const PreconditionViolation&) {
      }
    }
    ok = ok && report.ok();
    topologies[name] = std::move(entry);
  }
  body["topologies"] = std::move(topologies);

  Json filters = Json::object();
  for (const auto& name : ws->filter_names()) {
    const auto& decl = ws->filter_decl(name);
    const auto& sets = ws->filter_sets(name);
    Report report;
    switch (decl.kind) {
      case FilterKind::filter: report = is_filter(cat, Filter{sets}); break;
      case FilterKind::base: report = is_base(cat, FilterBase{sets}); break;
      case FilterKind::subbase: report = is_subbase(cat, FilterSubbase{sets}); break;
    }
    Json entry = report_json(report);
    entry["kind"] = kind_name(decl.kind);
    ok = ok && report.ok();
    filters[name] = std::move(entry);
  }
  body["filters"] = std::move(filters);
  body["ok"] = ok;
  return {std::move(body), !ok};
}

}  // namespace sievekit::cli
