#pragma once

#include "divscore/divmetrics.hpp"
#include "divscore/matrix.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace divscore::stats {

// 1-based ascending ranks; tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

struct MetricRow {
    std::string name;
    metrics::Direction direction = metrics::Direction::higher_better;
    std::vector<std::optional<double>> values; // one per scenario
};

struct RankingMatrix {
    std::vector<std::string> metrics;
    std::vector<metrics::Direction> directions;
    std::vector<std::string> scenarios;
    std::vector<std::vector<double>> rank; // rank[m][s], 1 = best
    std::vector<std::string> dropped;      // metrics missing a value somewhere
};

// Rows with any absent value are dropped; throws when none remain.
RankingMatrix rank_scenarios(std::span<const std::string> scenarios, std::span<const MetricRow> rows);

// Pearson correlation of average ranks; nullopt when either input is constant.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

struct CorrelationMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<std::optional<double>>> values; // unit diagonal
};

CorrelationMatrix correlation_matrix(const RankingMatrix& ranking);

// Mann–Whitney AUC with midranks. labels are 0/1; needs both classes.
double auc(std::span<const double> scores, std::span<const int> labels);

// Mean one-vs-rest AUC over classes that have both positives and negatives
// in `labels`; with two classes this is the AUC of column 1.
double macro_auc(const Matrix& probs, std::span<const int> labels);

} // namespace divscore::stats
