#include "sievekit/morphism_set.hpp"

#include <algorithm>
#include <functional>

namespace sievekit {

MorphismSet MorphismSet::full(std::size_t universe) {
  MorphismSet s(universe);
  for (std::size_t i = 0; i < universe; ++i) s.insert(morphism_at(i));
  return s;
}

std::size_t MorphismSet::size() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool MorphismSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool MorphismSet::is_subset_of(const MorphismSet& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const auto theirs = i < other.words_.size() ? other.words_[i] : 0;
    if ((words_[i] & ~theirs) != 0) return false;
  }
  return true;
}

bool MorphismSet::intersects(const MorphismSet& other) const noexcept {
  const auto n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

MorphismSet& MorphismSet::operator|=(const MorphismSet& other) noexcept {
  for (std::size_t i = 0; i < words_.size() && i < other.words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

MorphismSet& MorphismSet::operator&=(const MorphismSet& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= i < other.words_.size() ? other.words_[i] : 0;
  return *this;
}

MorphismSet& MorphismSet::operator-=(const MorphismSet& other) noexcept {
  for (std::size_t i = 0; i < words_.size() && i < other.words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

std::vector<MorphismId> MorphismSet::elements() const {
  std::vector<MorphismId> out;
  out.reserve(size());
  for_each([&](MorphismId m) { out.push_back(m); });
  return out;
}

std::size_t MorphismSet::hash() const noexcept {
  std::size_t h = universe_;
  for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::strong_ordering canonical_compare(const MorphismSet& a, const MorphismSet& b) noexcept {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  // With equal cardinalities, the sorted member lists first differ at the
  // smallest element of the symmetric difference; whoever owns it is smaller.
  const auto diff = (a - b) | (b - a);
  if (diff.empty()) return std::strong_ordering::equal;
  const auto first = diff.elements().front();
  return a.contains(first) ? std::strong_ordering::less : std::strong_ordering::greater;
}

}  // namespace sievekit
