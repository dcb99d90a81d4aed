#pragma once

#include "divscore/dataio/scenario.hpp"
#include "divscore/dataio/table.hpp"
#include "divscore/divmetrics.hpp"
#include "divscore/feature_matrix.hpp"
#include "divscore/resample.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace divscore::metrics {

// Pairwise metrics (Vendi, RougeL, semantic) run on label-stratified draws of
// `fraction` of the scenario, `repeats` times with seeds seed + r, and report
// the mean. IS, FID and metadata always use the whole scenario.
struct SubsamplePolicy {
    bool enabled = true;
    double fraction = 0.10;
    int repeats = 5;
    std::uint64_t seed = 0;
};

// Per-sample inputs, row i belonging to table record i. Missing members make
// the dependent metrics absent.
struct FeatureSet {
    std::optional<Matrix> pixel;
    std::optional<Matrix> hog;
    std::optional<Matrix> external;
    std::optional<Matrix> probabilities;   // for IS
    std::optional<Matrix> text_embeddings; // for semantic diversity
};

struct EvaluationOptions {
    SubsamplePolicy subsample;
    FeatureSource fid_source = FeatureSource::hog;
    std::size_t bootstrap_reps = 0; // 0: no intervals
    double bootstrap_level = 0.95;
    unsigned threads = 1;
};

struct MetricCell {
    std::optional<MetricValue> value;
    std::string absent_reason; // set when value is empty
    std::optional<resample::BootstrapCI> ci;
};

struct MetricColumn {
    std::string name;
    Direction direction = Direction::higher_better;
};

struct ScenarioResult {
    std::string scenario;
    std::size_t n = 0;
    std::vector<MetricCell> cells; // parallel to ScenarioReport::metrics
};

struct ScenarioReport {
    std::vector<MetricColumn> metrics;
    std::vector<ScenarioResult> scenarios;
    std::optional<std::string> reference;

    std::optional<std::size_t> metric_index(std::string_view name) const;
};

// Fixed metric order of every report.
std::vector<MetricColumn> standard_metrics();

// Scores every selection. FID compares against `reference` when given.
ScenarioReport evaluate_scenarios(const dataio::DatasetTable& table,
                                  std::span<const dataio::ScenarioSelection> scenarios,
                                  const std::optional<dataio::ScenarioSelection>& reference, const FeatureSet& features,
                                  const EvaluationOptions& options = {});

} // namespace divscore::metrics
