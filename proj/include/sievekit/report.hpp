#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sievekit {

/// A named piece of evidence attached to a violation. `names` holds object,
/// morphism or element names; a sieve witness lists its members.
struct Witness {
  enum class Kind { object, morphism, sieve, point, element, family };

  std::string role;
  Kind kind = Kind::morphism;
  std::vector<std::string> names;
  // Only used by Kind::family: one entry per sieve.
  std::vector<std::vector<std::string>> sieves;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct Violation {
  std::string law;
  std::string object;  // empty when the violation is not tied to one object
  std::vector<Witness> witnesses;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Outcome of a validation pass. Empty means everything held.
struct Report {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  void add(Violation v) { violations.push_back(std::move(v)); }
  void append(const Report& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
  bool has_law(std::string_view law) const {
    for (const auto& v : violations)
      if (v.law == law) return true;
    return false;
  }
};

Witness object_witness(std::string role, std::string name);
Witness morphism_witness(std::string role, std::string name);
Witness element_witness(std::string role, std::string name);

/// One-line human summary, e.g. "associativity at *: h=a g=b f=a".
std::string describe(const Violation& v);

}  // namespace sievekit
