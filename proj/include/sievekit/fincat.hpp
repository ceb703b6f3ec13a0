#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sievekit/ids.hpp"
#include "sievekit/report.hpp"

namespace sievekit {

struct MorphismDecl {
  std::string name;
  std::string dom;
  std::string cod;

  friend bool operator==(const MorphismDecl&, const MorphismDecl&) = default;
};

/// One row of a composition table: `after` ∘ `before` = `result`.
struct CompositionEntry {
  std::string after;
  std::string before;
  std::string result;

  friend bool operator==(const CompositionEntry&, const CompositionEntry&) = default;
};

/// Unvalidated, name-based description of a finite category. Composites
/// involving an identity may be left out of `composition`; they are inferred.
struct CategoryDescription {
  std::vector<std::string> objects;
  std::vector<MorphismDecl> morphisms;
  std::map<std::string, std::string> identities;
  std::vector<CompositionEntry> composition;

  friend bool operator==(const CategoryDescription&, const CategoryDescription&) = default;
};

struct Morphism {
  std::string name;
  ObjectId dom;
  ObjectId cod;
};

/// A morphism out of the canonical terminal object.
struct Point {
  MorphismId carrier;
  ObjectId target;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point& a, const Point& b) { return index(a.carrier) <=> index(b.carrier); }
};

/// A validated, fully materialized finite category. Immutable once built.
///
/// Objects and morphisms are indexed in lexicographic order of their names,
/// and every enumeration the library performs follows that order.
class FiniteCategory {
 public:
  /// Validates `raw` and builds the category, or throws ValidationError
  /// carrying every violated law (see check_category).
  static FiniteCategory validate(const CategoryDescription& raw);

  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t morphism_count() const noexcept { return morphisms_.size(); }

  const std::string& object_name(ObjectId o) const { return objects_.at(index(o)); }
  const Morphism& morphism(MorphismId m) const { return morphisms_.at(index(m)); }
  const std::string& morphism_name(MorphismId m) const { return morphism(m).name; }
  ObjectId dom(MorphismId m) const { return morphism(m).dom; }
  ObjectId cod(MorphismId m) const { return morphism(m).cod; }

  /// Throws UnknownName.
  ObjectId object_id(std::string_view name) const;
  MorphismId morphism_id(std::string_view name) const;
  std::optional<ObjectId> find_object(std::string_view name) const;
  std::optional<MorphismId> find_morphism(std::string_view name) const;

  MorphismId identity(ObjectId o) const { return identities_.at(index(o)); }
  bool is_identity(MorphismId m) const { return identity(dom(m)) == m; }

  /// `g` after `f`; nullopt when cod(f) != dom(g).
  std::optional<MorphismId> compose(MorphismId g, MorphismId f) const {
    if (cod(f) != dom(g)) return std::nullopt;
    return table_[index(g) * morphisms_.size() + index(f)];
  }
  /// Same as compose, for pairs already known to be composable.
  MorphismId then(MorphismId f, MorphismId g) const { return *compose(g, f); }

  /// Morphisms from `from` to `to`, in name order.
  std::span<const MorphismId> hom(ObjectId from, ObjectId to) const {
    return homs_[index(from) * objects_.size() + index(to)];
  }
  /// Morphisms with codomain `o`, in name order.
  std::span<const MorphismId> into(ObjectId o) const { return into_[index(o)]; }

  std::vector<ObjectId> object_ids() const;
  std::vector<MorphismId> morphism_ids() const;

  /// Canonical description: sorted names, identity composites omitted.
  CategoryDescription describe() const;

 private:
  FiniteCategory() = default;

  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<MorphismId> identities_;
  std::vector<MorphismId> table_;
  std::vector<std::vector<MorphismId>> homs_;
  std::vector<std::vector<MorphismId>> into_;
};

/// Checks every category law on `raw` and lists each violation with its
/// witnesses. An empty report means FiniteCategory::validate will succeed.
Report check_category(const CategoryDescription& raw);

/// The canonically least terminal object, if any.
std::optional<ObjectId> terminal_object(const FiniteCategory& cat);

/// Morphisms from the terminal object into `obj`. Throws NoTerminalObject.
std::vector<Point> points(const FiniteCategory& cat, ObjectId obj);

/// Category of a poset: one morphism x->y whenever x <= y. `order` must
/// already be reflexive, antisymmetric and transitive; otherwise throws
/// ValidationError naming the offending pair or triple.
FiniteCategory from_poset(std::span<const std::string> elements,
                          std::span<const std::pair<std::string, std::string>> order);

/// Reflexive-transitive closure of a covering relation, ready for from_poset.
std::vector<std::pair<std::string, std::string>> order_from_covers(
    std::span<const std::string> elements, std::span<const std::pair<std::string, std::string>> covers);

/// Name given by from_poset to the morphism x -> y.
std::string poset_arrow_name(std::string_view x, std::string_view y);

/// Brute-force search for a terminal object, binary products and equalizers.
/// Diagnostic only: each missing limit becomes a violation.
Report check_finite_completeness(const FiniteCategory& cat);

}  // namespace sievekit
