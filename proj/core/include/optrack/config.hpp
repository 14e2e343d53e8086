#pragma once

#include <string>

#include "optrack/harness.hpp"

namespace optrack {

// Parse a flat key/value experiment config (schema documented in the
// README). Unknown or duplicate keys, malformed values, out-of-range values
// and unknown algorithm names all throw std::invalid_argument naming the
// offending key. Missing optional keys fall back to the defaults in
// SimulationConfig; horizons are sorted and de-duplicated.
SimulationConfig parse_config(const std::string& path);
SimulationConfig parse_config_text(const std::string& text);

// Canonical emission; parse_config_text(dump_config(c)) reproduces c.
std::string dump_config(const SimulationConfig& config);

// Shortest 17-significant-digit decimal form ("%.17g"); round-trips doubles.
std::string format_g17(double value);

}  // namespace optrack
