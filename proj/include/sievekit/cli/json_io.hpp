#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "sievekit/errors.hpp"
#include "sievekit/filter.hpp"
#include "sievekit/report.hpp"

namespace sievekit::cli {

using Json = nlohmann::json;

/// Input that does not match the document schema. `pointer` is a JSON
/// pointer to the offending value.
class SchemaError : public Error {
 public:
  SchemaError(std::string pointer, const std::string& message)
      : Error((pointer.empty() ? std::string("/") : pointer) + ": " + message), pointer_(std::move(pointer)) {}
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

enum class Format { json, text };

/// Appends one reference token, escaping '~' and '/'.
std::string pointer_join(std::string_view base, std::string_view token);
std::string pointer_join(std::string_view base, std::size_t index);

Json sieve_json(const FiniteCategory& cat, const Sieve& s);
Json family_json(const FiniteCategory& cat, const SieveFamily& family);
/// Object name -> family, objects in name order.
Json assignment_json(const FiniteCategory& cat, const SieveAssignment& sets);
Json point_json(const FiniteCategory& cat, const Point& p);
Json witness_json(const Witness& w);
Json violation_json(const Violation& v);
Json report_json(const Report& r);

/// Indented `key: value` rendering of any report.
std::string render_text(const Json& j);
std::string render(const Json& j, Format format);

}  // namespace sievekit::cli
