#pragma once

#include "divscore/trainer.hpp"

#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace divscore::datamap {

struct DataMapPoint {
    std::string sample_id;
    double confidence = 0.0;  // mean p_true over epochs
    double variability = 0.0; // population std of p_true over epochs
    std::size_t epochs = 0;
    std::map<std::string, std::string> tags;
};

// One point per sample id, ordered by first appearance in the log.
std::vector<DataMapPoint> datamap_stats(const trainer::EpochProbLog& log);

// Attaches tags by sample id; ids missing from `tags` keep an empty map.
void attach_tags(std::vector<DataMapPoint>& points, const std::map<std::string, std::map<std::string, std::string>>& tags);

// Partition by the value of `tag`. Throws when a point lacks the tag.
std::map<std::string, std::vector<DataMapPoint>> subgroup_maps(std::span<const DataMapPoint> points,
                                                               const std::string& tag);

struct DensityGrid {
    static constexpr std::size_t nx = 100;
    static constexpr std::size_t ny = 100;
    static constexpr double x_max = 1.0; // confidence
    static constexpr double y_max = 0.5; // variability

    std::vector<double> density; // ny×nx, row iy holds variability cell iy
    double bandwidth_x = 0.0;
    double bandwidth_y = 0.0;

    static double cell_width() noexcept { return x_max / nx; }
    static double cell_height() noexcept { return y_max / ny; }
    static double x_center(std::size_t ix) noexcept { return (static_cast<double>(ix) + 0.5) * cell_width(); }
    static double y_center(std::size_t iy) noexcept { return (static_cast<double>(iy) + 0.5) * cell_height(); }

    double at(std::size_t ix, std::size_t iy) const noexcept { return density[iy * nx + ix]; }
    // Σ density · cell area
    double integral() const noexcept;
};

inline constexpr double kBandwidthFloor = 1e-3;

// Scott's rule n^(-1/6)·σ per axis (population σ), floored at kBandwidthFloor.
double scott_bandwidth(std::span<const double> values);

// Product Gaussian KDE evaluated at the grid cell centres.
DensityGrid density_grid(std::span<const DataMapPoint> points);

// Tag values whose median confidence lies below
// global median − threshold · global IQR, in ascending value order.
std::vector<std::string> flag_outlier_subgroups(std::span<const DataMapPoint> points, const std::string& tag,
                                                double threshold = 1.5);

std::string format_points_csv(std::span<const DataMapPoint> points, std::span<const std::string> tag_columns = {});
// Long format: group,confidence,variability,density.
std::string format_grids_csv(const std::map<std::string, DensityGrid>& grids);
// One panel per group: density shading with the points on top.
std::string render_datamap_svg(const std::map<std::string, std::vector<DataMapPoint>>& groups,
                               const std::map<std::string, DensityGrid>& grids, const std::string& title);

} // namespace divscore::datamap
