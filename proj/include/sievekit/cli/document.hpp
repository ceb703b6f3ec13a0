#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sievekit/cli/json_io.hpp"
#include "sievekit/corpus.hpp"
#include "sievekit/frame.hpp"

namespace sievekit::cli {

/// Sieves and families by morphism name, kept sorted and duplicate free.
using NameSieve = std::vector<std::string>;
using NameFamily = std::vector<NameSieve>;
using NameAssignment = std::map<std::string, NameFamily>;

enum class FilterKind { filter, base, subbase };

struct FilterDecl {
  FilterKind kind = FilterKind::filter;
  bool generate = false;
  NameAssignment sets;
};

/// The parsed input document. Names are not resolved against the category
/// yet; Workspace does that.
struct WorkspaceDocument {
  Json category;  // inline description or preset reference, canonical form
  std::map<std::string, NameAssignment> topologies;
  std::map<std::string, FilterDecl> filters;
  Json queries = Json::array();
};

/// Throws SchemaError with the location of the first problem.
WorkspaceDocument parse_document(const Json& j);
Json serialize(const WorkspaceDocument& doc);

NameFamily canonical_family(NameFamily family);
const char* kind_name(FilterKind kind);

/// Built-in posets by name: C2, C3, B2, N5.
std::optional<corpus::PosetSpec> named_poset(std::string_view name);

struct LoadedCategory {
  FiniteCategory cat;
  std::optional<Frame> frame;
  /// Topologies that come with the preset, e.g. "canonical" on frames.
  std::map<std::string, GrothendieckTopology> topologies;
};

/// Expands a preset or validates an inline description. Throws SchemaError
/// for malformed input and ValidationError when the structure breaks a law.
LoadedCategory load_category(const Json& category, const std::string& pointer = "/category");

Json category_json(const CategoryDescription& d);
NameAssignment name_assignment(const FiniteCategory& cat, const SieveAssignment& sets);

/// Document holding only a preset category; `spec` is "kind" or
/// "kind:poset", e.g. "frame:B2".
WorkspaceDocument preset_document(std::string_view spec);

/// Same document with the category inlined and preset topologies spelled out.
WorkspaceDocument expand(const WorkspaceDocument& doc);

/// A document resolved against its category.
class Workspace {
 public:
  static Workspace load(const WorkspaceDocument& doc);

  const WorkspaceDocument& document() const noexcept { return doc_; }
  const FiniteCategory& category() const noexcept { return loaded_.cat; }
  const Frame* frame() const noexcept { return loaded_.frame ? &*loaded_.frame : nullptr; }

  /// Declared topologies plus those supplied by the preset, in name order.
  std::vector<std::string> topology_names() const;
  /// Also answers "trivial" and "chaotic" unless a declaration shadows them.
  GrothendieckTopology topology(std::string_view name) const;
  bool has_topology(std::string_view name) const;
  /// The only named topology, or "trivial" when there is none. Throws
  /// SchemaError when several are declared.
  std::string default_topology() const;

  std::vector<std::string> filter_names() const;
  bool has_filter(std::string_view name) const;
  const FilterDecl& filter_decl(std::string_view name) const;
  /// Families as written, missing objects filled in.
  const SieveAssignment& filter_sets(std::string_view name) const;
  /// The filter itself, or the one generated from a base or subbase. Throws
  /// ValidationError when the declaration breaks its axioms.
  Filter filter(std::string_view name) const;

  Sieve resolve_sieve(ObjectId obj, const NameSieve& names, const std::string& pointer) const;

 private:
  Workspace(WorkspaceDocument doc, LoadedCategory loaded) : doc_(std::move(doc)), loaded_(std::move(loaded)) {}

  WorkspaceDocument doc_;
  LoadedCategory loaded_;
  std::map<std::string, GrothendieckTopology, std::less<>> topologies_;
  std::map<std::string, SieveAssignment, std::less<>> filters_;
};

}  // namespace sievekit::cli
