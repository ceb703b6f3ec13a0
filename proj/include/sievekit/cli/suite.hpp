#pragma once

#include <filesystem>
#include <optional>

#include "sievekit/cli/queries.hpp"

namespace sievekit::cli {

struct SuiteOptions {
  std::size_t guard = kDefaultSieveGuard;
  /// Extra *.json workspace documents, run in file name order.
  std::optional<std::filesystem::path> seed_corpus;
};

/// Runs every built-in check over the corpus categories (C2, C3, B2, N5,
/// PP, M1, PT) and any seed documents. The report is byte-for-byte
/// reproducible for the same inputs.
QueryResult run_corpus_suite(const SuiteOptions& options);

}  // namespace sievekit::cli
