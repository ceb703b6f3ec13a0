#pragma once

#include <optional>
#include <string>

#include "sievekit/cli/document.hpp"

namespace sievekit::cli {

struct QueryOptions {
  std::size_t guard = kDefaultSieveGuard;
  TopologyLevel level = TopologyLevel::full;
  std::optional<std::string> topology;
  std::size_t union_size = 3;
};

struct QueryResult {
  Json body;
  bool counterexample = false;
};

/// Evaluates one query record ({"op": ...}). Input problems surface as
/// SchemaError, ValidationError or the other library errors.
QueryResult run_query(const Workspace& ws, const Json& query, const QueryOptions& options,
                      const std::string& pointer = "");

/// Checks the category, every declared topology and every declared filter.
/// A category that fails its laws is reported, not thrown.
QueryResult validate_document(const WorkspaceDocument& doc, const QueryOptions& options);

/// Accepted audit ids: neighborhood-filter, cluster, closure, prime,
/// finite-union. Returns nullopt for anything else.
std::optional<std::string> audit_id(std::string_view id);

}  // namespace sievekit::cli
