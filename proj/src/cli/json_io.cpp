#include "sievekit/cli/json_io.hpp"

#include <sstream>

namespace sievekit::cli {

std::string pointer_join(std::string_view base, std::string_view token) {
  std::string out(base);
  out += '/';
  for (char c : token) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

std::string pointer_join(std::string_view base, std::size_t index) { return pointer_join(base, std::to_string(index)); }

Json sieve_json(const FiniteCategory& cat, const Sieve& s) { return member_names(cat, s); }

Json family_json(const FiniteCategory& cat, const SieveFamily& family) {
  Json out = Json::array();
  for (const auto& s : family) out.push_back(sieve_json(cat, s));
  return out;
}

Json assignment_json(const FiniteCategory& cat, const SieveAssignment& sets) {
  Json out = Json::object();
  for (auto o : cat.object_ids()) out[cat.object_name(o)] = family_json(cat, sets.at(index(o)));
  return out;
}

Json point_json(const FiniteCategory& cat, const Point& p) { return cat.morphism_name(p.carrier); }

namespace {

const char* kind_name(Witness::Kind k) {
  switch (k) {
    case Witness::Kind::object: return "object";
    case Witness::Kind::morphism: return "morphism";
    case Witness::Kind::sieve: return "sieve";
    case Witness::Kind::point: return "point";
    case Witness::Kind::element: return "element";
    case Witness::Kind::family: return "family";
  }
  return "unknown";
}

bool is_scalar_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (x.is_structured()) return false;
  return true;
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

std::string inline_text(const Json& j) {
  if (!j.is_array()) return scalar_text(j);
  std::string out = "{";
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (i) out += ", ";
    out += inline_text(j[i]);
  }
  return out + "}";
}

bool is_inline(const Json& j) {
  if (!j.is_structured()) return true;
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (!(x.is_primitive() || is_scalar_array(x))) return false;
  return true;
}

void render_into(std::ostringstream& os, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_inline(v)) {
        os << pad << k << ": " << inline_text(v) << '\n';
      } else if (v.empty()) {
        os << pad << k << ": (none)\n";
      } else {
        os << pad << k << ":\n";
        render_into(os, v, depth + 1);
      }
    }
    return;
  }
  if (j.is_array()) {
    for (const auto& v : j) {
      if (is_inline(v)) {
        os << pad << "- " << inline_text(v) << '\n';
      } else {
        os << pad << "-\n";
        render_into(os, v, depth + 1);
      }
    }
    return;
  }
  os << pad << scalar_text(j) << '\n';
}

}  // namespace

Json witness_json(const Witness& w) {
  Json out{{"role", w.role}, {"kind", kind_name(w.kind)}};
  if (w.kind == Witness::Kind::family) {
    out["sieves"] = w.sieves;
  } else if (w.kind == Witness::Kind::sieve) {
    out["sieve"] = w.names;
  } else {
    out["name"] = w.names.empty() ? std::string() : w.names.front();
  }
  return out;
}

Json violation_json(const Violation& v) {
  Json out{{"law", v.law}};
  if (!v.object.empty()) out["object"] = v.object;
  Json witnesses = Json::array();
  for (const auto& w : v.witnesses) witnesses.push_back(witness_json(w));
  out["witnesses"] = std::move(witnesses);
  if (!v.detail.empty()) out["detail"] = v.detail;
  return out;
}

Json report_json(const Report& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) violations.push_back(violation_json(v));
  return {{"ok", r.ok()}, {"violations", std::move(violations)}};
}

std::string render_text(const Json& j) {
  std::ostringstream os;
  render_into(os, j, 0);
  return os.str();
}

std::string render(const Json& j, Format format) {
  if (format == Format::text) return render_text(j);
  return j.dump(2) + "\n";
}

}  // namespace sievekit::cli
