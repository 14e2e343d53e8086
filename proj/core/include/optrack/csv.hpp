#pragma once

#include <string>
#include <vector>

#include "optrack/harness.hpp"

namespace optrack {

// One (instance, algorithm, horizon) cell of the results table.
struct ResultRow {
  double instance_mu0 = 0.0;
  double instance_mu1 = 0.0;
  std::string algorithm;
  std::uint64_t horizon = 0;
  std::uint64_t replications = 0;
  double normalized_mse = 0.0;
  double normalized_mse_se = 0.0;
  double mean_regret = 0.0;
  double mean_regret_se = 0.0;
  double median_exploration_time = 0.0;  // may be +inf ("inf" in the file)
  double cs_violation_rate = 0.0;
};

inline constexpr const char* kResultHeader =
    "instance_mu0,instance_mu1,algorithm,horizon,replications,"
    "normalized_mse,normalized_mse_se,mean_regret,mean_regret_se,"
    "median_exploration_time,cs_violation_rate";

// Rows sorted by (instance, algorithm name, horizon).
std::vector<ResultRow> to_rows(const std::vector<AggregateMetrics>& cells);

// Full file contents: header plus one line per row, LF newlines, numeric
// fields with 17 significant digits.
std::string results_csv_string(const std::vector<ResultRow>& rows);

// Writes results_csv_string to `path`. Throws on empty rows and on IO
// failures, naming the path.
void write_results(const std::vector<ResultRow>& rows, const std::string& path);

// Strict reader for the schema above (used by the plot command).
std::vector<ResultRow> read_results(const std::string& path);

}  // namespace optrack
