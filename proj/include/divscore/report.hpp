#pragma once

#include "divscore/evaluate.hpp"
#include "divscore/stats.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace divscore::report {

struct InputDigest {
    std::string path;
    std::string sha256; // lowercase hex of the file bytes

    bool operator==(const InputDigest&) const = default;
};

// Reproducibility envelope written into every report.
struct RunManifest {
    std::string command;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::vector<InputDigest> inputs;
    std::string version = DIVSCORE_VERSION;
    std::optional<double> wall_seconds;  // omitted under --reproducible
    std::optional<std::string> timestamp; // omitted under --reproducible

    bool operator==(const RunManifest&) const = default;
};

std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(std::string_view text);
// "# key: value" lines, readable by the CSV parser as comments.
std::string manifest_comment_lines(const RunManifest& manifest);

struct ParsedReport {
    metrics::ScenarioReport report;
    RunManifest manifest;
};

std::string report_to_json(const metrics::ScenarioReport& report, const RunManifest& manifest);
ParsedReport report_from_json(std::string_view text);

// Metric rows × scenario columns; the direction column holds ↑/↓. Cells with
// an interval read "value [lo, hi]"; absent cells are empty.
std::string report_to_csv(const metrics::ScenarioReport& report, const RunManifest& manifest);

std::vector<std::string> scenario_names(const metrics::ScenarioReport& report);
std::vector<stats::MetricRow> metric_rows(const metrics::ScenarioReport& report);

std::string ranking_to_csv(const stats::RankingMatrix& ranking, const RunManifest& manifest);
std::string correlation_to_csv(const stats::CorrelationMatrix& corr, const RunManifest& manifest);
// Heatmap with one annotated cell per entry.
std::string correlation_to_svg(const stats::CorrelationMatrix& corr, const std::string& title,
                               const RunManifest& manifest);

// Inserts the manifest as comments right after the opening <svg> tag.
std::string embed_manifest_svg(std::string svg_text, const RunManifest& manifest);

stats::CorrelationMatrix correlation_from_csv(std::string_view text);

} // namespace divscore::report
