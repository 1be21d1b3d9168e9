#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ym/io.hpp"

namespace ym {

/// Everything a scenario run produces, ready to be written to disk:
/// the report document, the per-step table, and per-step artifacts
/// (relative path, file content).
struct ScenarioOutput {
    std::string name;
    io::json report;
    std::string table_csv;
    std::vector<std::pair<std::string, std::string>> artifacts;
};

const std::vector<std::string>& known_scenarios();

/// Runs one of the bundled scenarios. All bundled scenarios are fully
/// deterministic; the seed is recorded in the report and reserved for
/// randomized variants. Throws InvalidInputError for unknown names.
ScenarioOutput run_named_scenario(const std::string& name, int steps, std::uint64_t seed,
                                  double tolerance);

} // namespace ym
