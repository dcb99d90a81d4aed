#include "divscore/datamap.hpp"
#include "divscore/dataio/csv.hpp"
#include "divscore/error.hpp"
#include "divscore/svg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace divscore::datamap {

double DensityGrid::integral() const noexcept {
    double sum = 0.0;
    for (double d : density) sum += d;
    return sum * cell_width() * cell_height();
}

double scott_bandwidth(std::span<const double> values) {
    if (values.empty()) throw ValidationError("bandwidth of an empty sample");
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sigma = std::sqrt(ss / n);
    return std::max(kBandwidthFloor, std::pow(n, -1.0 / 6.0) * sigma);
}

DensityGrid density_grid(std::span<const DataMapPoint> points) {
    if (points.empty()) throw ValidationError("density grid needs at least one point");
    std::vector<double> xs, ys;
    for (const auto& p : points) {
        xs.push_back(p.confidence);
        ys.push_back(p.variability);
    }
    DensityGrid g;
    g.bandwidth_x = scott_bandwidth(xs);
    g.bandwidth_y = scott_bandwidth(ys);
    g.density.assign(DensityGrid::nx * DensityGrid::ny, 0.0);

    // Separable kernel: per-point factors along each axis, then outer products.
    std::vector<double> kx(DensityGrid::nx), ky(DensityGrid::ny);
    const double norm = 1.0 / (2.0 * std::numbers::pi * g.bandwidth_x * g.bandwidth_y *
                               static_cast<double>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t ix = 0; ix < DensityGrid::nx; ++ix) {
            const double u = (DensityGrid::x_center(ix) - xs[i]) / g.bandwidth_x;
            kx[ix] = std::exp(-0.5 * u * u);
        }
        for (std::size_t iy = 0; iy < DensityGrid::ny; ++iy) {
            const double u = (DensityGrid::y_center(iy) - ys[i]) / g.bandwidth_y;
            ky[iy] = std::exp(-0.5 * u * u);
        }
        for (std::size_t iy = 0; iy < DensityGrid::ny; ++iy) {
            if (ky[iy] == 0.0) continue;
            double* row = g.density.data() + iy * DensityGrid::nx;
            for (std::size_t ix = 0; ix < DensityGrid::nx; ++ix) row[ix] += norm * ky[iy] * kx[ix];
        }
    }
    return g;
}

std::string format_grids_csv(const std::map<std::string, DensityGrid>& grids) {
    std::string out = "group,confidence,variability,density\n";
    for (const auto& [name, g] : grids) {
        const std::string group = dataio::csv_escape(name);
        for (std::size_t iy = 0; iy < DensityGrid::ny; ++iy)
            for (std::size_t ix = 0; ix < DensityGrid::nx; ++ix) {
                out += group + "," + dataio::format_double(DensityGrid::x_center(ix)) + "," +
                       dataio::format_double(DensityGrid::y_center(iy)) + "," + dataio::format_double(g.at(ix, iy)) +
                       "\n";
            }
    }
    return out;
}

std::string render_datamap_svg(const std::map<std::string, std::vector<DataMapPoint>>& groups,
                               const std::map<std::string, DensityGrid>& grids, const std::string& title) {
    constexpr double panel = 240.0;
    constexpr double margin = 40.0;
    const double width = margin + static_cast<double>(std::max<std::size_t>(groups.size(), 1)) * (panel + margin);
    const double height = panel + 2.5 * margin;
    svg::Document doc(width, height);
    doc.text(margin, 20.0, title, 14.0);

    double x0 = margin;
    for (const auto& [name, pts] : groups) {
        const double y0 = 1.5 * margin;
        doc.rect(x0, y0, panel, panel, "#ffffff", "#333333");
        auto it = grids.find(name);
        if (it != grids.end()) {
            const auto& g = it->second;
            const double peak = *std::max_element(g.density.begin(), g.density.end());
            // 20×20 coarse shading keeps the file small.
            constexpr std::size_t coarse = 20;
            const std::size_t sx = DensityGrid::nx / coarse;
            const std::size_t sy = DensityGrid::ny / coarse;
            for (std::size_t cy = 0; cy < coarse; ++cy)
                for (std::size_t cx = 0; cx < coarse; ++cx) {
                    double v = 0.0;
                    for (std::size_t iy = cy * sy; iy < (cy + 1) * sy; ++iy)
                        for (std::size_t ix = cx * sx; ix < (cx + 1) * sx; ++ix) v = std::max(v, g.at(ix, iy));
                    if (peak <= 0.0 || v / peak < 0.02) continue;
                    const double cell = panel / coarse;
                    doc.rect(x0 + static_cast<double>(cx) * cell, y0 + panel - static_cast<double>(cy + 1) * cell,
                             cell, cell, svg::sequential_color(v / peak), "none");
                }
        }
        for (const auto& p : pts) {
            const double px = x0 + p.confidence / DensityGrid::x_max * panel;
            const double py = y0 + panel - std::min(p.variability, DensityGrid::y_max) / DensityGrid::y_max * panel;
            doc.circle(px, py, 2.0, "#1f3b73");
        }
        doc.text(x0, y0 - 6.0, name + " (n=" + std::to_string(pts.size()) + ")", 11.0);
        doc.text(x0 + panel / 2.0 - 30.0, y0 + panel + 16.0, "confidence", 10.0);
        doc.text(x0 - 30.0, y0 + panel / 2.0, "variability", 10.0, -90.0);
        x0 += panel + margin;
    }
    return doc.str();
}

} // namespace divscore::datamap
