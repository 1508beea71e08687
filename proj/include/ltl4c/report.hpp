#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltl4c/pipeline.hpp"

namespace ltl4c {

/// Outcome of a check run.
struct run_report {
  verdict6 verdict = verdict6::presumably_false;
  std::vector<node_snapshot> nodes; // quantifier nodes only, ordered by path
  std::uint64_t events = 0;
  double elapsed_seconds = 0;
  std::size_t threads = 1;
};

inline constexpr int report_schema_version = 1;

run_report make_report(const pipeline& p, double elapsed_seconds);

/// `<Adam,12>`; the root is `<>`.
std::string path_text(const value_vector& path, const symbol_table& symbols);

std::string format_human(const run_report& r, const symbol_table& symbols);
/// Single-line JSON object with a versioned field set.
std::string format_json(const run_report& r, const symbol_table& symbols);

/// One line per node and leaf: path, quantifier, counters, verdict.
std::string format_tree(const std::vector<node_snapshot>& nodes, const symbol_table& symbols);

/// Process exit status for a verdict: 0 on the true side, 1 on the false side.
constexpr int exit_code(verdict6 v) noexcept { return is_true_side(v) ? 0 : 1; }

} // namespace ltl4c
