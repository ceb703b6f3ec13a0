#include "sievekit/cli/document.hpp"

#include <algorithm>
#include <set>

namespace sievekit::cli {

namespace {

const std::set<std::string> kQueryOps{"audit",   "closure",  "cluster", "converge",
                                      "filter-gen", "pullback", "sieves",  "ultra"};

const Json& require(const Json& j, const std::string& pointer, Json::value_t type, const char* what) {
  if (j.type() != type) throw SchemaError(pointer, std::string("expected ") + what);
  return j;
}

std::string string_at(const Json& j, const std::string& pointer) {
  require(j, pointer, Json::value_t::string, "a string");
  return j.get<std::string>();
}

std::vector<std::string> strings_at(const Json& j, const std::string& pointer) {
  require(j, pointer, Json::value_t::array, "an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string_at(j[i], pointer_join(pointer, i)));
  return out;
}

NameSieve parse_sieve(const Json& j, const std::string& pointer) {
  auto names = strings_at(j, pointer);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

NameFamily parse_family(const Json& j, const std::string& pointer) {
  require(j, pointer, Json::value_t::array, "an array of sieves");
  NameFamily out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_sieve(j[i], pointer_join(pointer, i)));
  return canonical_family(std::move(out));
}

NameAssignment parse_assignment(const Json& j, const std::string& pointer) {
  require(j, pointer, Json::value_t::object, "an object mapping object names to sieve families");
  NameAssignment out;
  for (const auto& [obj, family] : j.items()) out[obj] = parse_family(family, pointer_join(pointer, obj));
  return out;
}

Json assignment_to_json(const NameAssignment& a) {
  Json out = Json::object();
  for (const auto& [obj, family] : a) out[obj] = family;
  return out;
}

bool is_kind_key(const Json& j, const char* key) { return j.contains(key) && j.at(key).is_object(); }

FilterDecl parse_filter(const Json& j, const std::string& pointer) {
  require(j, pointer, Json::value_t::object, "a filter description");
  FilterDecl d;
  const char* key = nullptr;
  for (auto [k, kind] : {std::pair{"filter", FilterKind::filter}, std::pair{"base", FilterKind::base},
                         std::pair{"subbase", FilterKind::subbase}}) {
    if (!is_kind_key(j, k)) continue;
    if (key) throw SchemaError(pointer, "give only one of filter, base, subbase");
    key = k;
    d.kind = kind;
  }
  if (!key) {
    d.sets = parse_assignment(j, pointer);
    return d;
  }
  for (const auto& [k, v] : j.items()) {
    if (k == key) continue;
    if (k != "generate") throw SchemaError(pointer_join(pointer, k), "unexpected key");
    require(v, pointer_join(pointer, k), Json::value_t::boolean, "a boolean");
    d.generate = v.get<bool>();
  }
  d.sets = parse_assignment(j.at(key), pointer_join(pointer, key));
  return d;
}

Json canonical_query(const Json& q, const std::string& pointer) {
  require(q, pointer, Json::value_t::object, "a query object");
  if (!q.contains("op")) throw SchemaError(pointer, "query needs an \"op\"");
  const auto op = string_at(q.at("op"), pointer_join(pointer, "op"));
  if (!kQueryOps.count(op)) throw SchemaError(pointer_join(pointer, "op"), "unknown query op '" + op + "'");
  Json out = q;
  for (const char* key : {"sieve", "generators"})
    if (q.contains(key)) out[key] = parse_sieve(q.at(key), pointer_join(pointer, key));
  for (const char* key : {"object", "morphism", "filter", "point", "topology", "audit"})
    if (q.contains(key)) string_at(q.at(key), pointer_join(pointer, key));
  return out;
}

Json canonical_category(const Json& j, const std::string& pointer) {
  require(j, pointer, Json::value_t::object, "a category description or preset reference");
  if (j.contains("preset")) {
    Json out = j;
    if (j.contains("covers")) {
      const auto& covers = require(j.at("covers"), pointer_join(pointer, "covers"), Json::value_t::array,
                                   "an array of pairs");
      std::vector<std::pair<std::string, std::string>> pairs;
      for (std::size_t i = 0; i < covers.size(); ++i) {
        const auto p = strings_at(covers[i], pointer_join(pointer_join(pointer, "covers"), i));
        if (p.size() != 2) throw SchemaError(pointer_join(pointer_join(pointer, "covers"), i), "expected a pair");
        pairs.emplace_back(p[0], p[1]);
      }
      std::sort(pairs.begin(), pairs.end());
      pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
      out["covers"] = Json::array();
      for (const auto& [x, y] : pairs) out["covers"].push_back({x, y});
    }
    return out;
  }
  for (const auto& [k, v] : j.items()) {
    if (k != "objects" && k != "morphisms" && k != "identities" && k != "composition")
      throw SchemaError(pointer_join(pointer, k), "unexpected key");
  }
  CategoryDescription d;
  if (j.contains("objects")) d.objects = strings_at(j.at("objects"), pointer_join(pointer, "objects"));
  if (j.contains("morphisms")) {
    const auto base = pointer_join(pointer, "morphisms");
    const auto& ms = require(j.at("morphisms"), base, Json::value_t::array, "an array of morphisms");
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const auto at = pointer_join(base, i);
      require(ms[i], at, Json::value_t::object, "a morphism {name, dom, cod}");
      MorphismDecl m;
      for (auto [key, field] : {std::pair{"name", &m.name}, std::pair{"dom", &m.dom}, std::pair{"cod", &m.cod}}) {
        if (!ms[i].contains(key)) throw SchemaError(at, std::string("missing \"") + key + "\"");
        *field = string_at(ms[i].at(key), pointer_join(at, key));
      }
      d.morphisms.push_back(std::move(m));
    }
  }
  if (j.contains("identities")) {
    const auto base = pointer_join(pointer, "identities");
    require(j.at("identities"), base, Json::value_t::object, "an object mapping objects to identities");
    for (const auto& [obj, id] : j.at("identities").items()) d.identities[obj] = string_at(id, pointer_join(base, obj));
  }
  if (j.contains("composition")) {
    const auto base = pointer_join(pointer, "composition");
    const auto& rows = require(j.at("composition"), base, Json::value_t::array, "an array of [g, f, g.f] rows");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto r = strings_at(rows[i], pointer_join(base, i));
      if (r.size() != 3) throw SchemaError(pointer_join(base, i), "expected [g, f, g.f]");
      d.composition.push_back({r[0], r[1], r[2]});
    }
  }
  return category_json(d);
}

CategoryDescription category_from_json(const Json& j) {
  CategoryDescription d;
  d.objects = j.at("objects").get<std::vector<std::string>>();
  for (const auto& m : j.at("morphisms"))
    d.morphisms.push_back({m.at("name").get<std::string>(), m.at("dom").get<std::string>(), m.at("cod").get<std::string>()});
  d.identities = j.at("identities").get<std::map<std::string, std::string>>();
  for (const auto& r : j.at("composition")) d.composition.push_back({r[0], r[1], r[2]});
  return d;
}

corpus::PosetSpec poset_parameters(const Json& j, const std::string& pointer) {
  if (j.contains("poset")) {
    if (j.contains("elements") || j.contains("covers"))
      throw SchemaError(pointer_join(pointer, "poset"), "give either a poset name or elements and covers");
    const auto name = string_at(j.at("poset"), pointer_join(pointer, "poset"));
    auto spec = named_poset(name);
    if (!spec) throw SchemaError(pointer_join(pointer, "poset"), "unknown poset '" + name + "'");
    return *spec;
  }
  if (!j.contains("elements")) throw SchemaError(pointer, "poset preset needs \"poset\" or \"elements\"");
  corpus::PosetSpec spec;
  spec.name = "custom";
  spec.elements = strings_at(j.at("elements"), pointer_join(pointer, "elements"));
  if (j.contains("covers")) {
    for (const auto& pair : j.at("covers")) spec.covers.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
  }
  return spec;
}

void check_preset_keys(const Json& j, const std::string& pointer, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : j.items()) {
    if (k == "preset") continue;
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
      throw SchemaError(pointer_join(pointer, k), "invalid parameter for this preset");
  }
}

}  // namespace

const char* kind_name(FilterKind kind) {
  switch (kind) {
    case FilterKind::filter: return "filter";
    case FilterKind::base: return "base";
    case FilterKind::subbase: return "subbase";
  }
  return "filter";
}

NameFamily canonical_family(NameFamily family) {
  std::sort(family.begin(), family.end(), [](const NameSieve& a, const NameSieve& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  family.erase(std::unique(family.begin(), family.end()), family.end());
  return family;
}

WorkspaceDocument parse_document(const Json& j) {
  require(j, "", Json::value_t::object, "a workspace document object");
  for (const auto& [k, v] : j.items()) {
    if (k != "category" && k != "topologies" && k != "filters" && k != "queries")
      throw SchemaError(pointer_join("", k), "unexpected key");
  }
  if (!j.contains("category")) throw SchemaError("", "document needs exactly one \"category\"");
  WorkspaceDocument doc;
  doc.category = canonical_category(j.at("category"), "/category");
  if (j.contains("topologies")) {
    require(j.at("topologies"), "/topologies", Json::value_t::object, "an object of named topologies");
    for (const auto& [name, t] : j.at("topologies").items())
      doc.topologies[name] = parse_assignment(t, pointer_join("/topologies", name));
  }
  if (j.contains("filters")) {
    require(j.at("filters"), "/filters", Json::value_t::object, "an object of named filters");
    for (const auto& [name, f] : j.at("filters").items())
      doc.filters[name] = parse_filter(f, pointer_join("/filters", name));
  }
  if (j.contains("queries")) {
    require(j.at("queries"), "/queries", Json::value_t::array, "an array of queries");
    for (std::size_t i = 0; i < j.at("queries").size(); ++i)
      doc.queries.push_back(canonical_query(j.at("queries")[i], pointer_join("/queries", i)));
  }
  return doc;
}

Json serialize(const WorkspaceDocument& doc) {
  Json out{{"category", doc.category}};
  if (!doc.topologies.empty()) {
    Json ts = Json::object();
    for (const auto& [name, a] : doc.topologies) ts[name] = assignment_to_json(a);
    out["topologies"] = std::move(ts);
  }
  if (!doc.filters.empty()) {
    Json fs = Json::object();
    for (const auto& [name, d] : doc.filters) {
      if (d.kind == FilterKind::filter && !d.generate) {
        fs[name] = assignment_to_json(d.sets);
      } else {
        fs[name] = {{kind_name(d.kind), assignment_to_json(d.sets)}, {"generate", d.generate}};
      }
    }
    out["filters"] = std::move(fs);
  }
  if (!doc.queries.empty()) out["queries"] = doc.queries;
  return out;
}

std::optional<corpus::PosetSpec> named_poset(std::string_view name) {
  if (name == "C2") return corpus::chain2();
  if (name == "C3") return corpus::chain3();
  if (name == "B2") return corpus::diamond();
  if (name == "N5") return corpus::pentagon();
  return std::nullopt;
}

Json category_json(const CategoryDescription& d) {
  auto objects = d.objects;
  std::sort(objects.begin(), objects.end());
  auto morphisms = d.morphisms;
  std::sort(morphisms.begin(), morphisms.end(), [](const MorphismDecl& a, const MorphismDecl& b) {
    return std::tie(a.name, a.dom, a.cod) < std::tie(b.name, b.dom, b.cod);
  });
  auto rows = d.composition;
  std::sort(rows.begin(), rows.end(), [](const CompositionEntry& a, const CompositionEntry& b) {
    return std::tie(a.after, a.before, a.result) < std::tie(b.after, b.before, b.result);
  });
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  Json out{{"objects", objects}, {"identities", d.identities}};
  out["morphisms"] = Json::array();
  for (const auto& m : morphisms) out["morphisms"].push_back({{"name", m.name}, {"dom", m.dom}, {"cod", m.cod}});
  out["composition"] = Json::array();
  for (const auto& r : rows) out["composition"].push_back({r.after, r.before, r.result});
  return out;
}

NameAssignment name_assignment(const FiniteCategory& cat, const SieveAssignment& sets) {
  NameAssignment out;
  for (auto o : cat.object_ids()) {
    NameFamily family;
    for (const auto& s : sets.at(index(o))) family.push_back(member_names(cat, s));
    out[cat.object_name(o)] = canonical_family(std::move(family));
  }
  return out;
}

LoadedCategory load_category(const Json& category, const std::string& pointer) {
  if (!category.contains("preset")) {
    const auto canon = canonical_category(category, pointer);
    return {FiniteCategory::validate(category_from_json(canon)), std::nullopt, {}};
  }
  const auto preset = string_at(category.at("preset"), pointer_join(pointer, "preset"));
  if (preset == "poset" || preset == "frame") {
    check_preset_keys(category, pointer, {"poset", "elements", "covers"});
    const auto spec = poset_parameters(category, pointer);
    const auto order = spec.order();
    if (preset == "poset") return {from_poset(spec.elements, order), std::nullopt, {}};
    auto frame = Frame::from_poset(spec.elements, order);
    LoadedCategory out{frame.category(), frame, {}};
    out.topologies.emplace("canonical", canonical_topology(frame));
    return out;
  }
  if (preset == "monoid" || preset == "parallel-pair" || preset == "pointed-two") {
    check_preset_keys(category, pointer, {});
    if (preset == "monoid") return {FiniteCategory::validate(corpus::idempotent_monoid()), std::nullopt, {}};
    if (preset == "parallel-pair") return {FiniteCategory::validate(corpus::parallel_pair()), std::nullopt, {}};
    auto pt = FiniteCategory::validate(corpus::pointed_two());
    LoadedCategory out{pt, std::nullopt, {}};
    out.topologies.emplace("pointed", corpus::pointed_two_topology(pt));
    return out;
  }
  throw SchemaError(pointer_join(pointer, "preset"), "unknown preset '" + preset + "'");
}

WorkspaceDocument preset_document(std::string_view spec) {
  Json category;
  const auto colon = spec.find(':');
  category["preset"] = std::string(spec.substr(0, colon));
  if (colon != std::string_view::npos) category["poset"] = std::string(spec.substr(colon + 1));
  return parse_document(Json{{"category", category}});
}

WorkspaceDocument expand(const WorkspaceDocument& doc) {
  auto out = doc;
  if (!doc.category.contains("preset")) return out;
  const auto loaded = load_category(doc.category);
  out.category = category_json(loaded.cat.describe());
  for (const auto& [name, j] : loaded.topologies)
    if (!out.topologies.count(name)) out.topologies[name] = name_assignment(loaded.cat, j.covering);
  return out;
}

Workspace Workspace::load(const WorkspaceDocument& doc) {
  Workspace ws(doc, load_category(doc.category));
  const auto& cat = ws.category();

  auto resolve = [&](const NameAssignment& a, const std::string& pointer, bool fill_max) {
    SieveAssignment out(cat.object_count());
    for (auto o : cat.object_ids())
      if (fill_max) out[index(o)] = {maximal_sieve(cat, o)};
    for (const auto& [obj_name, family] : a) {
      const auto at = pointer_join(pointer, obj_name);
      const auto obj = cat.find_object(obj_name);
      if (!obj) throw SchemaError(at, "unknown object '" + obj_name + "'");
      SieveFamily sieves;
      for (std::size_t i = 0; i < family.size(); ++i)
        sieves.push_back(ws.resolve_sieve(*obj, family[i], pointer_join(at, i)));
      normalize(sieves);
      out[index(*obj)] = std::move(sieves);
    }
    return out;
  };

  for (const auto& [name, j] : ws.loaded_.topologies) ws.topologies_.emplace(name, j);
  for (const auto& [name, a] : doc.topologies)
    ws.topologies_[name] = GrothendieckTopology{resolve(a, pointer_join("/topologies", name), true)};
  for (const auto& [name, d] : doc.filters) {
    auto at = pointer_join("/filters", name);
    if (d.kind != FilterKind::filter || d.generate) at = pointer_join(at, kind_name(d.kind));
    ws.filters_[name] = resolve(d.sets, at, d.kind != FilterKind::subbase);
  }

  for (std::size_t i = 0; i < doc.queries.size(); ++i) {
    const auto& q = doc.queries[i];
    const auto at = pointer_join("/queries", i);
    if (q.contains("filter") && !ws.has_filter(q.at("filter").get<std::string>()))
      throw SchemaError(pointer_join(at, "filter"), "undeclared filter '" + q.at("filter").get<std::string>() + "'");
    if (q.contains("topology") && !ws.has_topology(q.at("topology").get<std::string>()))
      throw SchemaError(pointer_join(at, "topology"),
                        "undeclared topology '" + q.at("topology").get<std::string>() + "'");
  }
  return ws;
}

std::vector<std::string> Workspace::topology_names() const {
  std::vector<std::string> out;
  for (const auto& [name, j] : topologies_) out.push_back(name);
  return out;
}

bool Workspace::has_topology(std::string_view name) const {
  return topologies_.count(name) > 0 || name == "trivial" || name == "chaotic";
}

GrothendieckTopology Workspace::topology(std::string_view name) const {
  if (auto it = topologies_.find(name); it != topologies_.end()) return it->second;
  if (name == "trivial") return trivial_topology(category());
  if (name == "chaotic") return chaotic_topology(category());
  throw UnknownName("unknown topology '" + std::string(name) + "'");
}

std::string Workspace::default_topology() const {
  if (topologies_.empty()) return "trivial";
  if (topologies_.size() == 1) return topologies_.begin()->first;
  throw SchemaError("/topologies", "several topologies are available; pick one with --topology");
}

std::vector<std::string> Workspace::filter_names() const {
  std::vector<std::string> out;
  for (const auto& [name, f] : filters_) out.push_back(name);
  return out;
}

bool Workspace::has_filter(std::string_view name) const { return filters_.count(name) > 0; }

const FilterDecl& Workspace::filter_decl(std::string_view name) const {
  if (auto it = doc_.filters.find(std::string(name)); it != doc_.filters.end()) return it->second;
  throw UnknownName("unknown filter '" + std::string(name) + "'");
}

const SieveAssignment& Workspace::filter_sets(std::string_view name) const {
  if (auto it = filters_.find(name); it != filters_.end()) return it->second;
  throw UnknownName("unknown filter '" + std::string(name) + "'");
}

Filter Workspace::filter(std::string_view name) const {
  const auto& decl = filter_decl(name);
  const auto& sets = filter_sets(name);
  switch (decl.kind) {
    case FilterKind::base: return filter_from_base(category(), FilterBase{sets});
    case FilterKind::subbase: return filter_from_subbase(category(), FilterSubbase{sets});
    case FilterKind::filter: break;
  }
  Filter f{sets};
  auto report = is_filter(category(), f);
  if (!report.ok()) {
    const auto what = "filter '" + std::string(name) + "' is invalid: " + describe(report.violations.front());
    throw ValidationError(what, std::move(report));
  }
  return f;
}

Sieve Workspace::resolve_sieve(ObjectId obj, const NameSieve& names, const std::string& pointer) const {
  const auto& cat = category();
  MorphismSet members(cat.morphism_count());
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto m = cat.find_morphism(names[i]);
    if (!m) throw SchemaError(pointer_join(pointer, i), "unknown morphism '" + names[i] + "'");
    if (cat.cod(*m) != obj)
      throw SchemaError(pointer_join(pointer, i),
                        "morphism '" + names[i] + "' does not end at '" + cat.object_name(obj) + "'");
    members.insert(*m);
  }
  return Sieve(obj, std::move(members));
}

}  // namespace sievekit::cli
