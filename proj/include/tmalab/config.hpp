#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tmalab/bias_lab.hpp"
#include "tmalab/scenario.hpp"

namespace tmalab {

/// Parsed bias config plus the optional range-sweep specification.
struct BiasFile {
    BiasConfig config;
    std::vector<double> sweep_values; // empty unless the file defines a sweep
};

/// Loads the key/value scenario format (see configs/ for the schema).
/// Unknown keys, malformed numbers and invariant violations raise ConfigError
/// with the offending line number.
Scenario load_scenario_file(const std::string& path);

BiasFile load_bias_file(const std::string& path);

/// FNV-1a hash of the raw file bytes; echoed into every emitted CSV so a
/// report can be traced back to the exact config that produced it.
std::uint64_t file_hash(const std::string& path);

} // namespace tmalab
