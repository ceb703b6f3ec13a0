#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

#include "sievekit/ids.hpp"

namespace sievekit {

/// A subset of the morphisms of one category, stored as a bitset over the
/// category's morphism indices.
class MorphismSet {
 public:
  MorphismSet() = default;
  explicit MorphismSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  static MorphismSet full(std::size_t universe);

  std::size_t universe() const noexcept { return universe_; }

  bool contains(MorphismId m) const noexcept {
    const auto i = index(m);
    return i < universe_ && ((words_[i / 64] >> (i % 64)) & 1u) != 0;
  }
  void insert(MorphismId m) noexcept { words_[index(m) / 64] |= std::uint64_t{1} << (index(m) % 64); }
  void erase(MorphismId m) noexcept { words_[index(m) / 64] &= ~(std::uint64_t{1} << (index(m) % 64)); }

  std::size_t size() const noexcept;
  bool empty() const noexcept;

  bool is_subset_of(const MorphismSet& other) const noexcept;
  bool intersects(const MorphismSet& other) const noexcept;

  MorphismSet& operator|=(const MorphismSet& other) noexcept;
  MorphismSet& operator&=(const MorphismSet& other) noexcept;
  MorphismSet& operator-=(const MorphismSet& other) noexcept;

  friend MorphismSet operator|(MorphismSet a, const MorphismSet& b) noexcept { return a |= b; }
  friend MorphismSet operator&(MorphismSet a, const MorphismSet& b) noexcept { return a &= b; }
  friend MorphismSet operator-(MorphismSet a, const MorphismSet& b) noexcept { return a -= b; }

  friend bool operator==(const MorphismSet&, const MorphismSet&) = default;

  /// Members in increasing index order.
  std::vector<MorphismId> elements() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      auto bits = words_[w];
      while (bits != 0) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(bits));
        fn(morphism_at(w * 64 + bit));
        bits &= bits - 1;
      }
    }
  }

  std::size_t hash() const noexcept;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Canonical order: by cardinality, then lexicographically by the sorted
/// member list.
std::strong_ordering canonical_compare(const MorphismSet& a, const MorphismSet& b) noexcept;

struct MorphismSetHash {
  std::size_t operator()(const MorphismSet& s) const noexcept { return s.hash(); }
};

}  // namespace sievekit
