#include "optrack/config.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace optrack {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw std::invalid_argument("config: key '" + key + "': " + what);
}

double parse_double(const std::string& key, const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  const double parsed = std::strtod(begin, &end);
  if (end == begin || *end != '\0') fail(key, "malformed number '" + value + "'");
  return parsed;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  if (value.empty() || value[0] == '-') fail(key, "expected a nonnegative integer");
  const char* begin = value.c_str();
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(begin, &end, 10);
  if (end == begin || *end != '\0') fail(key, "malformed integer '" + value + "'");
  return parsed;
}

}  // namespace

std::string format_g17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

SimulationConfig parse_config_text(const std::string& text) {
  SimulationConfig config;
  std::set<std::string> seen;
  bool have_instances = false, have_horizons = false, have_algorithms = false;

  std::stringstream stream(text);
  std::string raw;
  while (std::getline(stream, raw)) {
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: expected 'key = value', got '" +
                                  line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("config: empty key");
    if (!seen.insert(key).second) fail(key, "duplicate key");

    if (key == "instances") {
      for (const std::string& item : split_list(value)) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
          fail(key, "expected 'mu0:mu1', got '" + item + "'");
        }
        Instance inst;
        inst.mu0 = parse_double(key, trim(item.substr(0, colon)));
        inst.mu1 = parse_double(key, trim(item.substr(colon + 1)));
        if (!(inst.mu0 >= 0.0 && inst.mu0 <= 1.0) ||
            !(inst.mu1 >= 0.0 && inst.mu1 <= 1.0)) {
          fail(key, "means must lie in [0, 1]");
        }
        config.instances.push_back(inst);
      }
      have_instances = true;
    } else if (key == "horizons") {
      for (const std::string& item : split_list(value)) {
        const std::uint64_t t = parse_u64(key, item);
        if (t < 1) fail(key, "horizons must be >= 1");
        config.horizons.push_back(t);
      }
      std::sort(config.horizons.begin(), config.horizons.end());
      config.horizons.erase(
          std::unique(config.horizons.begin(), config.horizons.end()),
          config.horizons.end());
      have_horizons = true;
    } else if (key == "algorithms") {
      for (const std::string& item : split_list(value)) {
        const auto algorithm = algorithm_from_name(item);
        if (!algorithm) fail(key, "unknown algorithm '" + item + "'");
        config.algorithms.push_back(*algorithm);
      }
      have_algorithms = true;
    } else if (key == "replications") {
      config.replications = parse_u64(key, value);
      if (config.replications < 1) fail(key, "must be >= 1");
    } else if (key == "delta") {
      config.delta = parse_double(key, value);
      if (!(config.delta > 0.0 && config.delta < 1.0)) {
        fail(key, "must lie in (0, 1)");
      }
    } else if (key == "master_seed") {
      config.master_seed = parse_u64(key, value);
    } else if (key == "boundary_time_mode") {
      if (value == "arm_count") {
        config.boundary_time_mode = BoundaryTimeMode::ArmCount;
      } else if (value == "total_time") {
        config.boundary_time_mode = BoundaryTimeMode::TotalTime;
      } else {
        fail(key, "expected 'arm_count' or 'total_time'");
      }
    } else if (key == "clip_exponent") {
      config.clip_exponent = parse_double(key, value);
      if (!(config.clip_exponent > 0.0)) fail(key, "must be positive");
    } else {
      fail(key, "unknown key");
    }
  }

  if (!have_instances) fail("instances", "missing required key");
  if (!have_horizons) fail("horizons", "missing required key");
  if (!have_algorithms) fail("algorithms", "missing required key");
  if (config.instances.empty()) fail("instances", "list is empty");
  if (config.horizons.empty()) fail("horizons", "list is empty");
  if (config.algorithms.empty()) fail("algorithms", "list is empty");
  validate(config);
  return config;
}

SimulationConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config: cannot open '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string dump_config(const SimulationConfig& config) {
  std::string out;
  out += "instances = ";
  for (std::size_t i = 0; i < config.instances.size(); ++i) {
    if (i) out += ", ";
    out += format_g17(config.instances[i].mu0) + ":" +
           format_g17(config.instances[i].mu1);
  }
  out += "\nhorizons = ";
  for (std::size_t i = 0; i < config.horizons.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(config.horizons[i]);
  }
  out += "\nalgorithms = ";
  for (std::size_t i = 0; i < config.algorithms.size(); ++i) {
    if (i) out += ", ";
    out += algorithm_name(config.algorithms[i]);
  }
  out += "\nreplications = " + std::to_string(config.replications);
  out += "\ndelta = " + format_g17(config.delta);
  out += "\nmaster_seed = " + std::to_string(config.master_seed);
  out += "\nboundary_time_mode = ";
  out += config.boundary_time_mode == BoundaryTimeMode::ArmCount
             ? "arm_count"
             : "total_time";
  out += "\nclip_exponent = " + format_g17(config.clip_exponent);
  out += "\n";
  return out;
}

}  // namespace optrack
