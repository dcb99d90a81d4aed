#include "divscore/datamap.hpp"
#include "divscore/dataio/csv.hpp"
#include "divscore/error.hpp"
#include "divscore/resample.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string_view>
#include <unordered_map>

namespace divscore::datamap {

std::vector<DataMapPoint> datamap_stats(const trainer::EpochProbLog& log) {
    if (log.entries.empty()) throw ValidationError("data map: empty probability log");
    std::vector<DataMapPoint> points;
    std::unordered_map<std::string, std::size_t> slot;
    std::vector<std::vector<double>> series;
    std::set<std::pair<std::string_view, std::size_t>> seen;
    for (const auto& e : log.entries) {
        if (!seen.emplace(e.sample_id, e.epoch).second)
            throw ValidationError("data map: sample '" + e.sample_id + "' logged twice in epoch " + std::to_string(e.epoch));
        auto [it, fresh] = slot.try_emplace(e.sample_id, points.size());
        if (fresh) {
            points.push_back({e.sample_id, 0.0, 0.0, 0, {}});
            series.emplace_back();
        }
        series[it->second].push_back(e.p_true);
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto& s = series[i];
        // Sorting makes the sums independent of epoch order.
        std::sort(s.begin(), s.end());
        double sum = 0.0;
        for (double v : s) sum += v;
        const double mean = sum / static_cast<double>(s.size());
        double ss = 0.0;
        for (double v : s) ss += (v - mean) * (v - mean);
        points[i].confidence = mean;
        points[i].variability = std::sqrt(ss / static_cast<double>(s.size()));
        points[i].epochs = s.size();
    }
    return points;
}

void attach_tags(std::vector<DataMapPoint>& points,
                 const std::map<std::string, std::map<std::string, std::string>>& tags) {
    for (auto& p : points) {
        auto it = tags.find(p.sample_id);
        if (it != tags.end()) p.tags = it->second;
    }
}

std::map<std::string, std::vector<DataMapPoint>> subgroup_maps(std::span<const DataMapPoint> points,
                                                               const std::string& tag) {
    std::map<std::string, std::vector<DataMapPoint>> out;
    for (const auto& p : points) {
        auto it = p.tags.find(tag);
        if (it == p.tags.end()) throw ValidationError("sample '" + p.sample_id + "' has no tag '" + tag + "'");
        out[it->second].push_back(p);
    }
    return out;
}

namespace {

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return resample::percentile_sorted(v, 0.5);
}

} // namespace

std::vector<std::string> flag_outlier_subgroups(std::span<const DataMapPoint> points, const std::string& tag,
                                                double threshold) {
    const auto groups = subgroup_maps(points, tag);
    if (groups.size() < 2) throw ValidationError("outlier flagging needs at least 2 values of tag '" + tag + "'");
    std::vector<double> all;
    for (const auto& p : points) all.push_back(p.confidence);
    std::sort(all.begin(), all.end());
    const double median = resample::percentile_sorted(all, 0.5);
    const double iqr = resample::percentile_sorted(all, 0.75) - resample::percentile_sorted(all, 0.25);
    const double cutoff = median - threshold * iqr;

    std::vector<std::string> flagged;
    for (const auto& [value, members] : groups) {
        std::vector<double> c;
        for (const auto& p : members) c.push_back(p.confidence);
        if (median_of(std::move(c)) < cutoff) flagged.push_back(value);
    }
    return flagged;
}

std::string format_points_csv(std::span<const DataMapPoint> points, std::span<const std::string> tag_columns) {
    dataio::CsvRow header{"sample_id", "confidence", "variability", "epochs"};
    header.insert(header.end(), tag_columns.begin(), tag_columns.end());
    std::string out = dataio::join_csv(header) + "\n";
    for (const auto& p : points) {
        dataio::CsvRow row{p.sample_id, dataio::format_double(p.confidence), dataio::format_double(p.variability),
                           std::to_string(p.epochs)};
        for (const auto& t : tag_columns) {
            auto it = p.tags.find(t);
            row.push_back(it == p.tags.end() ? std::string() : it->second);
        }
        out += dataio::join_csv(row) + "\n";
    }
    return out;
}

} // namespace divscore::datamap
