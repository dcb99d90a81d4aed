#pragma once

#include "divscore/dataio/table.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace divscore::dataio {

// tag = value, or tag ∈ {v1, v2, ...}. The pseudo-tag "label" matches class
// labels (integer code or, when the schema names them, the label value).
struct FilterTerm {
    std::string tag;
    std::vector<std::string> values;
};

struct Scenario {
    std::string name;
    std::vector<FilterTerm> filter; // conjunction; empty selects everything
};

struct ScenarioConfig {
    std::vector<Scenario> scenarios;
    std::optional<std::string> reference_scenario;

    const Scenario* find(std::string_view name) const;
};

// Terms joined by '&' or "and"; "in" and "∈" are interchangeable.
std::vector<FilterTerm> parse_filter(std::string_view text);
std::string format_filter(const std::vector<FilterTerm>& filter);

// Sections "[scenario NAME]" with a "filter" key, and an optional "[config]"
// section whose "reference" key names the reference scenario.
ScenarioConfig parse_scenario_config(std::string_view text);
std::string format_scenario_config(const ScenarioConfig& config);
ScenarioConfig load_scenario_config(const std::filesystem::path& path);

struct ScenarioSelection {
    std::string name;
    std::vector<std::size_t> indices; // table rows, ordered by sample_id
};

// One selection per scenario, in config order. Throws ValidationError when a
// term names an unknown tag or a scenario selects fewer than 2 samples.
std::vector<ScenarioSelection> materialize_scenarios(const ScenarioConfig& config, const DatasetTable& table);

} // namespace divscore::dataio
