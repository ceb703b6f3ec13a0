#pragma once

#include <cstddef>
#include <cstdint>

namespace sievekit {

// Indices into a FiniteCategory. Objects and morphisms are numbered in
// lexicographic order of their declared names.
enum class ObjectId : std::uint32_t {};
enum class MorphismId : std::uint32_t {};

constexpr std::size_t index(ObjectId id) noexcept { return static_cast<std::size_t>(id); }
constexpr std::size_t index(MorphismId id) noexcept { return static_cast<std::size_t>(id); }

constexpr ObjectId object_at(std::size_t i) noexcept { return static_cast<ObjectId>(i); }
constexpr MorphismId morphism_at(std::size_t i) noexcept { return static_cast<MorphismId>(i); }

}  // namespace sievekit
