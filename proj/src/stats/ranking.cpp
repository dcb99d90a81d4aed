#include "divscore/error.hpp"
#include "divscore/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace divscore::stats {

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i + 1;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        // positions i..j-1 hold 1-based ranks i+1..j
        const double mid = static_cast<double>(i + 1 + j) / 2.0;
        for (std::size_t t = i; t < j; ++t) ranks[order[t]] = mid;
        i = j;
    }
    return ranks;
}

RankingMatrix rank_scenarios(std::span<const std::string> scenarios, std::span<const MetricRow> rows) {
    RankingMatrix out;
    out.scenarios.assign(scenarios.begin(), scenarios.end());
    for (const auto& row : rows) {
        if (row.values.size() != scenarios.size()) {
            throw ValidationError("metric '" + row.name + "' has " + std::to_string(row.values.size()) +
                                  " values for " + std::to_string(scenarios.size()) + " scenarios");
        }
        if (std::any_of(row.values.begin(), row.values.end(), [](const auto& v) { return !v.has_value(); })) {
            out.dropped.push_back(row.name);
            continue;
        }
        std::vector<double> keyed;
        keyed.reserve(row.values.size());
        // Rank 1 goes to the best value: negate higher-is-better metrics.
        for (const auto& v : row.values)
            keyed.push_back(row.direction == metrics::Direction::higher_better ? -*v : *v);
        out.metrics.push_back(row.name);
        out.directions.push_back(row.direction);
        out.rank.push_back(average_ranks(keyed));
    }
    if (out.metrics.empty()) throw ValidationError("no metric has a value for every scenario; nothing to rank");
    return out;
}

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ValidationError("spearman: inputs differ in length");
    if (x.size() < 2) throw ValidationError("spearman: need at least 2 values");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationMatrix correlation_matrix(const RankingMatrix& ranking) {
    const std::size_t m = ranking.metrics.size();
    if (m < 2) throw ValidationError("correlation matrix needs at least 2 ranked metrics");
    CorrelationMatrix out;
    out.names = ranking.metrics;
    out.values.assign(m, std::vector<std::optional<double>>(m));
    for (std::size_t i = 0; i < m; ++i) {
        out.values[i][i] = 1.0;
        for (std::size_t j = i + 1; j < m; ++j) {
            const auto r = spearman(ranking.rank[i], ranking.rank[j]);
            out.values[i][j] = r;
            out.values[j][i] = r;
        }
    }
    return out;
}

} // namespace divscore::stats
