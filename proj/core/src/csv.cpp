#include "optrack/csv.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "optrack/config.hpp"

namespace optrack {

std::vector<ResultRow> to_rows(const std::vector<AggregateMetrics>& cells) {
  std::vector<ResultRow> rows;
  rows.reserve(cells.size());
  for (const AggregateMetrics& cell : cells) {
    ResultRow row;
    row.instance_mu0 = cell.instance.mu0;
    row.instance_mu1 = cell.instance.mu1;
    row.algorithm = algorithm_name(cell.algorithm);
    row.horizon = cell.horizon;
    row.replications = cell.replications;
    row.normalized_mse = cell.normalized_mse;
    row.normalized_mse_se = cell.normalized_mse_se;
    row.mean_regret = cell.mean_regret;
    row.mean_regret_se = cell.mean_regret_se;
    row.median_exploration_time = cell.median_exploration_time;
    row.cs_violation_rate = cell.cs_violation_rate;
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(),
            [](const ResultRow& a, const ResultRow& b) {
              return std::tie(a.instance_mu0, a.instance_mu1, a.algorithm,
                              a.horizon) < std::tie(b.instance_mu0,
                                                    b.instance_mu1, b.algorithm,
                                                    b.horizon);
            });
  return rows;
}

std::string results_csv_string(const std::vector<ResultRow>& rows) {
  std::string out(kResultHeader);
  out += '\n';
  for (const ResultRow& row : rows) {
    out += format_g17(row.instance_mu0);
    out += ',';
    out += format_g17(row.instance_mu1);
    out += ',';
    out += row.algorithm;
    out += ',';
    out += std::to_string(row.horizon);
    out += ',';
    out += std::to_string(row.replications);
    out += ',';
    out += format_g17(row.normalized_mse);
    out += ',';
    out += format_g17(row.normalized_mse_se);
    out += ',';
    out += format_g17(row.mean_regret);
    out += ',';
    out += format_g17(row.mean_regret_se);
    out += ',';
    out += format_g17(row.median_exploration_time);
    out += ',';
    out += format_g17(row.cs_violation_rate);
    out += '\n';
  }
  return out;
}

void write_results(const std::vector<ResultRow>& rows,
                   const std::string& path) {
  if (rows.empty()) {
    throw std::invalid_argument("write_results: no rows to write");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_results: cannot open '" + path + "'");
  }
  out << results_csv_string(rows);
  if (!out) {
    throw std::runtime_error("write_results: write failed for '" + path + "'");
  }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

double field_double(const std::string& field, const std::string& path) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const double parsed = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw std::runtime_error("read_results: malformed number '" + field +
                             "' in '" + path + "'");
  }
  return parsed;
}

std::uint64_t field_u64(const std::string& field, const std::string& path) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(begin, &end, 10);
  if (end == begin || *end != '\0') {
    throw std::runtime_error("read_results: malformed integer '" + field +
                             "' in '" + path + "'");
  }
  return parsed;
}

}  // namespace

std::vector<ResultRow> read_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("read_results: cannot open '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line) || line != kResultHeader) {
    throw std::runtime_error("read_results: unexpected header in '" + path +
                             "'");
  }
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 11) {
      throw std::runtime_error("read_results: expected 11 fields in '" + path +
                               "'");
    }
    ResultRow row;
    row.instance_mu0 = field_double(fields[0], path);
    row.instance_mu1 = field_double(fields[1], path);
    row.algorithm = fields[2];
    if (!algorithm_from_name(row.algorithm)) {
      throw std::runtime_error("read_results: unknown algorithm '" +
                               row.algorithm + "' in '" + path + "'");
    }
    row.horizon = field_u64(fields[3], path);
    row.replications = field_u64(fields[4], path);
    row.normalized_mse = field_double(fields[5], path);
    row.normalized_mse_se = field_double(fields[6], path);
    row.mean_regret = field_double(fields[7], path);
    row.mean_regret_se = field_double(fields[8], path);
    row.median_exploration_time = field_double(fields[9], path);
    row.cs_violation_rate = field_double(fields[10], path);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace optrack
