#include "sievekit/fincat.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "sievekit/errors.hpp"

namespace sievekit {

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

std::size_t position(const std::vector<std::string>& sorted, std::string_view name) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), name) - sorted.begin());
}

bool has(const std::vector<std::string>& sorted, std::string_view name) {
  return std::binary_search(sorted.begin(), sorted.end(), name);
}

void report_duplicates(Report& report, std::vector<std::string> names, const char* what) {
  std::sort(names.begin(), names.end());
  for (std::size_t i = 1; i < names.size(); ++i) {
    if (names[i] == names[i - 1] && (i < 2 || names[i - 2] != names[i])) {
      report.add({"duplicate-name", {}, {{what, Witness::Kind::element, {names[i]}, {}}}, std::string(what) + " declared twice"});
    }
  }
}

// Fills the raw tables for `raw` while recording every violated law. The
// tables are only meaningful when the report ends up empty.
Report analyze(const CategoryDescription& raw, std::vector<std::string>& objects,
               std::vector<Morphism>& morphisms, std::vector<MorphismId>& identities,
               std::vector<MorphismId>& table) {
  Report report;
  report_duplicates(report, raw.objects, "object");
  {
    std::vector<std::string> names;
    for (const auto& m : raw.morphisms) names.push_back(m.name);
    report_duplicates(report, names, "morphism");
  }

  objects = sorted_unique(raw.objects);
  std::vector<MorphismDecl> decls = raw.morphisms;
  std::sort(decls.begin(), decls.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  decls.erase(std::unique(decls.begin(), decls.end(), [](const auto& a, const auto& b) { return a.name == b.name; }),
              decls.end());
  std::vector<std::string> morphism_names;
  for (const auto& d : decls) morphism_names.push_back(d.name);

  for (const auto& d : decls) {
    for (const auto* end : {&d.dom, &d.cod}) {
      if (!has(objects, *end)) {
        report.add({"dangling-reference", *end, {morphism_witness("morphism", d.name)},
                    "morphism endpoint '" + *end + "' is not a declared object"});
      }
    }
  }
  for (const auto& [obj, id] : raw.identities) {
    if (!has(objects, obj)) {
      report.add({"dangling-reference", obj, {morphism_witness("identity", id)}, "identity declared for unknown object"});
    }
    if (!has(morphism_names, id)) {
      report.add({"dangling-reference", obj, {morphism_witness("identity", id)}, "identity is not a declared morphism"});
    }
  }
  for (const auto& e : raw.composition) {
    for (const auto* name : {&e.after, &e.before, &e.result}) {
      if (!has(morphism_names, *name)) {
        report.add({"dangling-reference",
                    {},
                    {morphism_witness("g", e.after), morphism_witness("f", e.before), morphism_witness("g.f", e.result)},
                    "composition entry names unknown morphism '" + *name + "'"});
      }
    }
  }
  if (!report.ok()) return report;

  morphisms.clear();
  for (const auto& d : decls) {
    morphisms.push_back({d.name, object_at(position(objects, d.dom)), object_at(position(objects, d.cod))});
  }
  const auto n = morphisms.size();
  auto mid = [&](std::string_view name) { return morphism_at(position(morphism_names, name)); };
  auto name_of = [&](MorphismId m) -> const std::string& { return morphisms[index(m)].name; };

  identities.assign(objects.size(), morphism_at(n));
  for (std::size_t o = 0; o < objects.size(); ++o) {
    auto it = raw.identities.find(objects[o]);
    if (it == raw.identities.end()) {
      report.add({"missing-identity", objects[o], {object_witness("object", objects[o])}, "no identity declared"});
      continue;
    }
    const auto id = mid(it->second);
    const auto& m = morphisms[index(id)];
    if (index(m.dom) != o || index(m.cod) != o) {
      report.add({"identity-shape", objects[o], {morphism_witness("identity", m.name)},
                  "identity must have domain and codomain equal to its object"});
      continue;
    }
    identities[o] = id;
  }
  if (!report.ok()) return report;

  const auto unset = morphism_at(n);
  table.assign(n * n, unset);
  auto slot = [&](MorphismId g, MorphismId f) -> MorphismId& { return table[index(g) * n + index(f)]; };

  for (const auto& e : raw.composition) {
    const auto g = mid(e.after), f = mid(e.before), h = mid(e.result);
    const std::vector<Witness> w = {morphism_witness("g", e.after), morphism_witness("f", e.before),
                                    morphism_witness("g.f", e.result)};
    if (morphisms[index(f)].cod != morphisms[index(g)].dom) {
      report.add({"non-composable-entry", {}, w, "cod(f) differs from dom(g)"});
      continue;
    }
    if (morphisms[index(h)].dom != morphisms[index(f)].dom || morphisms[index(h)].cod != morphisms[index(g)].cod) {
      report.add({"composite-typing", {}, w, "composite must run from dom(f) to cod(g)"});
      continue;
    }
    auto& cell = slot(g, f);
    if (cell != unset && cell != h) {
      report.add({"conflicting-composite", {}, w, "entry already recorded as " + name_of(cell)});
      continue;
    }
    cell = h;
  }

  // Identity composites may be omitted.
  for (std::size_t i = 0; i < n; ++i) {
    const auto f = morphism_at(i);
    const auto& m = morphisms[i];
    if (auto& c = slot(identities[index(m.cod)], f); c == unset) c = f;
    if (auto& c = slot(f, identities[index(m.dom)]); c == unset) c = f;
  }

  for (std::size_t gi = 0; gi < n; ++gi) {
    for (std::size_t fi = 0; fi < n; ++fi) {
      const auto g = morphism_at(gi), f = morphism_at(fi);
      if (morphisms[fi].cod != morphisms[gi].dom) continue;
      if (slot(g, f) == unset) {
        report.add({"missing-composite", {}, {morphism_witness("g", name_of(g)), morphism_witness("f", name_of(f))},
                    "no entry for g.f"});
      }
    }
  }
  if (!report.ok()) return report;

  for (std::size_t i = 0; i < n; ++i) {
    const auto f = morphism_at(i);
    const auto& m = morphisms[i];
    if (slot(identities[index(m.cod)], f) != f) {
      report.add({"identity-law", objects[index(m.cod)],
                  {morphism_witness("id", name_of(identities[index(m.cod)])), morphism_witness("f", m.name)},
                  "id.f != f"});
    }
    if (slot(f, identities[index(m.dom)]) != f) {
      report.add({"identity-law", objects[index(m.dom)],
                  {morphism_witness("f", m.name), morphism_witness("id", name_of(identities[index(m.dom)]))},
                  "f.id != f"});
    }
  }

  for (std::size_t hi = 0; hi < n; ++hi) {
    for (std::size_t gi = 0; gi < n; ++gi) {
      if (morphisms[gi].cod != morphisms[hi].dom) continue;
      for (std::size_t fi = 0; fi < n; ++fi) {
        if (morphisms[fi].cod != morphisms[gi].dom) continue;
        const auto h = morphism_at(hi), g = morphism_at(gi), f = morphism_at(fi);
        const auto left = slot(h, slot(g, f));
        const auto right = slot(slot(h, g), f);
        if (left != right) {
          report.add({"associativity",
                      {},
                      {morphism_witness("h", name_of(h)), morphism_witness("g", name_of(g)),
                       morphism_witness("f", name_of(f))},
                      "h.(g.f) = " + name_of(left) + " but (h.g).f = " + name_of(right)});
        }
      }
    }
  }
  return report;
}

}  // namespace

Report check_category(const CategoryDescription& raw) {
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<MorphismId> identities, table;
  return analyze(raw, objects, morphisms, identities, table);
}

FiniteCategory FiniteCategory::validate(const CategoryDescription& raw) {
  FiniteCategory cat;
  auto report = analyze(raw, cat.objects_, cat.morphisms_, cat.identities_, cat.table_);
  if (!report.ok()) {
    auto what = "invalid category: " + sievekit::describe(report.violations.front());
    throw ValidationError(std::move(what), std::move(report));
  }
  const auto no = cat.objects_.size();
  cat.homs_.assign(no * no, {});
  cat.into_.assign(no, {});
  for (std::size_t i = 0; i < cat.morphisms_.size(); ++i) {
    const auto& m = cat.morphisms_[i];
    cat.homs_[index(m.dom) * no + index(m.cod)].push_back(morphism_at(i));
    cat.into_[index(m.cod)].push_back(morphism_at(i));
  }
  return cat;
}

std::optional<ObjectId> FiniteCategory::find_object(std::string_view name) const {
  if (!has(objects_, name)) return std::nullopt;
  return object_at(position(objects_, name));
}

std::optional<MorphismId> FiniteCategory::find_morphism(std::string_view name) const {
  auto it = std::lower_bound(morphisms_.begin(), morphisms_.end(), name,
                             [](const Morphism& m, std::string_view n) { return m.name < n; });
  if (it == morphisms_.end() || it->name != name) return std::nullopt;
  return morphism_at(static_cast<std::size_t>(it - morphisms_.begin()));
}

ObjectId FiniteCategory::object_id(std::string_view name) const {
  if (auto o = find_object(name)) return *o;
  throw UnknownName("unknown object '" + std::string(name) + "'");
}

MorphismId FiniteCategory::morphism_id(std::string_view name) const {
  if (auto m = find_morphism(name)) return *m;
  throw UnknownName("unknown morphism '" + std::string(name) + "'");
}

std::vector<ObjectId> FiniteCategory::object_ids() const {
  std::vector<ObjectId> ids;
  for (std::size_t i = 0; i < objects_.size(); ++i) ids.push_back(object_at(i));
  return ids;
}

std::vector<MorphismId> FiniteCategory::morphism_ids() const {
  std::vector<MorphismId> ids;
  for (std::size_t i = 0; i < morphisms_.size(); ++i) ids.push_back(morphism_at(i));
  return ids;
}

CategoryDescription FiniteCategory::describe() const {
  CategoryDescription d;
  d.objects = objects_;
  for (const auto& m : morphisms_) d.morphisms.push_back({m.name, object_name(m.dom), object_name(m.cod)});
  for (std::size_t o = 0; o < objects_.size(); ++o) d.identities[objects_[o]] = morphism_name(identities_[o]);
  for (auto g : morphism_ids()) {
    if (is_identity(g)) continue;
    for (auto f : morphism_ids()) {
      if (is_identity(f)) continue;
      if (auto h = compose(g, f)) d.composition.push_back({morphism_name(g), morphism_name(f), morphism_name(*h)});
    }
  }
  return d;
}

std::optional<ObjectId> terminal_object(const FiniteCategory& cat) {
  for (auto t : cat.object_ids()) {
    const auto ids = cat.object_ids();
    if (std::all_of(ids.begin(), ids.end(), [&](ObjectId x) { return cat.hom(x, t).size() == 1; })) return t;
  }
  return std::nullopt;
}

std::vector<Point> points(const FiniteCategory& cat, ObjectId obj) {
  const auto t = terminal_object(cat);
  if (!t) throw NoTerminalObject();
  std::vector<Point> out;
  for (auto m : cat.hom(*t, obj)) out.push_back({m, obj});
  return out;
}

std::string poset_arrow_name(std::string_view x, std::string_view y) {
  if (x == y) return "id_" + std::string(x);
  return std::string(x) + "->" + std::string(y);
}

FiniteCategory from_poset(std::span<const std::string> elements,
                          std::span<const std::pair<std::string, std::string>> order) {
  Report report;
  report_duplicates(report, {elements.begin(), elements.end()}, "element");
  const auto names = sorted_unique({elements.begin(), elements.end()});
  const auto n = names.size();
  std::vector<char> leq(n * n, 0);
  for (const auto& [x, y] : order) {
    if (!has(names, x) || !has(names, y)) {
      report.add({"dangling-reference", {}, {element_witness("x", x), element_witness("y", y)},
                  "order pair names an undeclared element"});
      continue;
    }
    leq[position(names, x) * n + position(names, y)] = 1;
  }
  if (report.ok()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!leq[i * n + i]) report.add({"reflexivity", {}, {element_witness("x", names[i])}, "x <= x missing"});
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (leq[i * n + j] && leq[j * n + i]) {
          report.add({"antisymmetry", {}, {element_witness("x", names[i]), element_witness("y", names[j])},
                      "x <= y and y <= x with x != y"});
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!leq[i * n + j]) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (leq[j * n + k] && !leq[i * n + k]) {
            report.add({"transitivity",
                        {},
                        {element_witness("x", names[i]), element_witness("y", names[j]), element_witness("z", names[k])},
                        "x <= y <= z but not x <= z"});
          }
        }
      }
    }
  }
  if (!report.ok()) throw ValidationError("not a partial order: " + describe(report.violations.front()), report);

  CategoryDescription d;
  d.objects = names;
  for (std::size_t i = 0; i < n; ++i) {
    d.identities[names[i]] = poset_arrow_name(names[i], names[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (leq[i * n + j]) d.morphisms.push_back({poset_arrow_name(names[i], names[j]), names[i], names[j]});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq[i * n + j]) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == j || !leq[j * n + k]) continue;
        d.composition.push_back({poset_arrow_name(names[j], names[k]), poset_arrow_name(names[i], names[j]),
                                 poset_arrow_name(names[i], names[k])});
      }
    }
  }
  return FiniteCategory::validate(d);
}

std::vector<std::pair<std::string, std::string>> order_from_covers(
    std::span<const std::string> elements, std::span<const std::pair<std::string, std::string>> covers) {
  const auto names = sorted_unique({elements.begin(), elements.end()});
  const auto n = names.size();
  std::vector<char> leq(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = 1;
  for (const auto& [x, y] : covers) {
    if (!has(names, x) || !has(names, y)) {
      throw ValidationError("covering pair names an undeclared element",
                            Report{{{"dangling-reference", {}, {element_witness("x", x), element_witness("y", y)}, {}}}});
    }
    leq[position(names, x) * n + position(names, y)] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (leq[i * n + k] && leq[k * n + j]) leq[i * n + j] = 1;
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (leq[i * n + j]) out.emplace_back(names[i], names[j]);
  return out;
}

namespace {

bool has_product(const FiniteCategory& cat, ObjectId a, ObjectId b) {
  for (auto p : cat.object_ids()) {
    for (auto pa : cat.hom(p, a)) {
      for (auto pb : cat.hom(p, b)) {
        bool universal = true;
        for (auto x : cat.object_ids()) {
          for (auto xa : cat.hom(x, a)) {
            for (auto xb : cat.hom(x, b)) {
              std::size_t mediators = 0;
              for (auto u : cat.hom(x, p)) {
                if (cat.then(u, pa) == xa && cat.then(u, pb) == xb) ++mediators;
              }
              if (mediators != 1) universal = false;
            }
          }
        }
        if (universal) return true;
      }
    }
  }
  return false;
}

bool has_equalizer(const FiniteCategory& cat, MorphismId f, MorphismId g) {
  const auto x = cat.dom(f);
  for (auto e_obj : cat.object_ids()) {
    for (auto e : cat.hom(e_obj, x)) {
      if (cat.then(e, f) != cat.then(e, g)) continue;
      bool universal = true;
      for (auto z : cat.object_ids()) {
        for (auto zx : cat.hom(z, x)) {
          if (cat.then(zx, f) != cat.then(zx, g)) continue;
          std::size_t mediators = 0;
          for (auto u : cat.hom(z, e_obj)) {
            if (cat.then(u, e) == zx) ++mediators;
          }
          if (mediators != 1) universal = false;
        }
      }
      if (universal) return true;
    }
  }
  return false;
}

}  // namespace

Report check_finite_completeness(const FiniteCategory& cat) {
  Report report;
  if (!terminal_object(cat)) report.add({"terminal-object", {}, {}, "no terminal object"});
  const auto objs = cat.object_ids();
  for (std::size_t i = 0; i < objs.size(); ++i) {
    for (std::size_t j = i; j < objs.size(); ++j) {
      if (!has_product(cat, objs[i], objs[j])) {
        report.add({"binary-product",
                    {},
                    {object_witness("A", cat.object_name(objs[i])), object_witness("B", cat.object_name(objs[j]))},
                    "no product of A and B"});
      }
    }
  }
  for (auto f : cat.morphism_ids()) {
    for (auto g : cat.morphism_ids()) {
      if (index(g) <= index(f) || cat.dom(f) != cat.dom(g) || cat.cod(f) != cat.cod(g)) continue;
      if (!has_equalizer(cat, f, g)) {
        report.add({"equalizer",
                    {},
                    {morphism_witness("f", cat.morphism_name(f)), morphism_witness("g", cat.morphism_name(g))},
                    "no equalizer of the parallel pair f, g"});
      }
    }
  }
  return report;
}

}  // namespace sievekit
