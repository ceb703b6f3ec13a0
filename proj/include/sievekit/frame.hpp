#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sievekit/topology.hpp"

namespace sievekit {

enum class Element : std::uint32_t {};

constexpr std::size_t index(Element e) noexcept { return static_cast<std::size_t>(e); }
constexpr Element element_at(std::size_t i) noexcept { return static_cast<Element>(i); }

/// A finite distributive lattice with its Heyting implication, together with
/// its poset category. Element i is object i of that category.
class Frame {
 public:
  /// Throws ValidationError with law "lattice" (witness pair without a join
  /// or meet) or "distributivity" (witness triple), or the poset laws checked
  /// by from_poset.
  static Frame from_poset(std::span<const std::string> elements,
                          std::span<const std::pair<std::string, std::string>> order);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(Element e) const { return names_.at(index(e)); }
  Element element(std::string_view name) const;
  std::vector<Element> elements() const;

  bool leq(Element a, Element b) const { return leq_[index(a) * size() + index(b)] != 0; }
  Element join(Element a, Element b) const { return join_[index(a) * size() + index(b)]; }
  Element meet(Element a, Element b) const { return meet_[index(a) * size() + index(b)]; }
  Element implies(Element a, Element b) const { return implies_[index(a) * size() + index(b)]; }
  Element top() const noexcept { return top_; }
  Element bottom() const noexcept { return bottom_; }

  /// Join of a family; the empty join is the bottom element.
  Element join_all(std::span<const Element> family) const;

  const FiniteCategory& category() const noexcept { return category_; }
  ObjectId object(Element e) const { return object_at(index(e)); }
  Element element_of(ObjectId o) const { return element_at(index(o)); }

 private:
  explicit Frame(FiniteCategory cat) : category_(std::move(cat)) {}

  FiniteCategory category_;
  std::vector<std::string> names_;
  std::vector<char> leq_;
  std::vector<Element> join_, meet_, implies_;
  Element top_{}, bottom_{};
};

/// The join of `family` equals c. Throws PreconditionViolation when a member
/// is not below c.
bool base_covers(const Frame& frame, Element c, std::span<const Element> family);

/// The join of the domains of S's members equals c.
bool sieve_covers(const Frame& frame, Element c, const Sieve& s);

/// J(c) = sieves on c whose join is c.
GrothendieckTopology canonical_topology(const Frame& frame);

/// Every sieve in F(c) covers c, i.e. F(c) is contained in J(c).
bool frame_cover_converges(const Frame& frame, const Filter& f, Element c);

struct ConvergenceComparison {
  bool object_level = false;  // frame_cover_converges at the top element
  bool point_level = false;   // converges to the identity point of the top element
  bool agree() const noexcept { return object_level == point_level; }
};

/// Sets the object-level cover convergence at the top element beside
/// convergence to its unique point, under the canonical topology.
ConvergenceComparison compare_convergence_at_top(const Frame& frame, const Filter& f);

}  // namespace sievekit
