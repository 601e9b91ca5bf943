#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "k3ls/serialize.hpp"

namespace k3ls::cli {

enum ExitCode : int { kOk = 0, kUsageError = 1, kComputationError = 2 };

enum class OutputFormat { table, json, csv };

struct SweepRow {
  SystemClass system;
  DimensionPair dims;
  Verdict verdict;
  std::optional<Integer> actual;
  std::optional<bool> agreement;
};

/// Every normalized multiset (non-increasing) with at most max_points entries whose
/// conditions sum to at most budget.
std::vector<std::vector<Integer>> enumerate_multisets(std::size_t max_points, Integer budget);

/// Rows for the given systems in input order; oracle columns are filled when `oracle` is set.
/// Rows are evaluated on up to `threads` workers.
std::vector<SweepRow> evaluate_rows(const std::vector<SystemClass>& systems, bool oracle, Residue prime,
                                    std::uint64_t seed, const OracleOptions& options, unsigned threads);

/// Entry point shared by the executable and the tests. Writes the report to `out` (or to
/// --output) and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace k3ls::cli
