#include "divscore/error.hpp"
#include "divscore/features.hpp"
#include "divscore/parallel.hpp"
#include "divscore/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace divscore::features {

HogLayout hog_layout(std::size_t height, std::size_t width, const HogParams& p) {
    if (p.cell == 0 || p.bins == 0 || p.block == 0) throw ValidationError("HOG parameters must be positive");
    HogLayout l;
    l.cells_y = std::max((height + p.cell - 1) / p.cell, p.block);
    l.cells_x = std::max((width + p.cell - 1) / p.cell, p.block);
    l.padded_height = l.cells_y * p.cell;
    l.padded_width = l.cells_x * p.cell;
    l.dims = (l.cells_y - p.block + 1) * (l.cells_x - p.block + 1) * p.block * p.block * p.bins;
    return l;
}

std::vector<double> hog_descriptor(std::span<const std::uint8_t> image, std::size_t height, std::size_t width,
                                   const HogParams& p) {
    if (image.size() != height * width) throw ValidationError("hog_descriptor: image size mismatch");
    const HogLayout l = hog_layout(height, width, p);
    const std::size_t H = l.padded_height;
    const std::size_t W = l.padded_width;

    std::vector<double> padded(H * W, 0.0);
    for (std::size_t y = 0; y < height; ++y)
        for (std::size_t x = 0; x < width; ++x) padded[y * W + x] = image[y * width + x] / 255.0;

    const double bin_width = 180.0 / static_cast<double>(p.bins);
    std::vector<double> cells(l.cells_y * l.cells_x * p.bins, 0.0);
    for (std::size_t y = 0; y < H; ++y) {
        const std::size_t up = y == 0 ? 0 : y - 1;
        const std::size_t down = y + 1 == H ? y : y + 1;
        for (std::size_t x = 0; x < W; ++x) {
            const std::size_t left = x == 0 ? 0 : x - 1;
            const std::size_t right = x + 1 == W ? x : x + 1;
            const double gx = padded[y * W + right] - padded[y * W + left];
            const double gy = padded[down * W + x] - padded[up * W + x];
            const double magnitude = std::sqrt(gx * gx + gy * gy);
            if (magnitude == 0.0) continue;

            double angle = std::atan2(gy, gx) * 180.0 / std::numbers::pi + 90.0;
            angle = std::fmod(angle, 180.0);
            if (angle < 0.0) angle += 180.0;
            if (angle >= 180.0) angle -= 180.0;

            const double pos = angle / bin_width - 0.5;
            const double lo = std::floor(pos);
            const double frac = pos - lo;
            const auto nb = static_cast<long>(p.bins);
            const auto b0 = static_cast<std::size_t>(((static_cast<long>(lo) % nb) + nb) % nb);
            const std::size_t b1 = (b0 + 1) % p.bins;
            double* hist = &cells[((y / p.cell) * l.cells_x + x / p.cell) * p.bins];
            hist[b0] += magnitude * (1.0 - frac);
            hist[b1] += magnitude * frac;
        }
    }

    std::vector<double> out;
    out.reserve(l.dims);
    const std::size_t block_len = p.block * p.block * p.bins;
    std::vector<double> block(block_len);
    for (std::size_t by = 0; by + p.block <= l.cells_y; ++by) {
        for (std::size_t bx = 0; bx + p.block <= l.cells_x; ++bx) {
            std::size_t k = 0;
            for (std::size_t cy = by; cy < by + p.block; ++cy)
                for (std::size_t cx = bx; cx < bx + p.block; ++cx)
                    for (std::size_t b = 0; b < p.bins; ++b) block[k++] = cells[(cy * l.cells_x + cx) * p.bins + b];
            const double norm = std::sqrt(simd::sum_squares(block) + p.eps * p.eps);
            for (double v : block) out.push_back(v / norm);
        }
    }
    return out;
}

FeatureMatrix hog_features(const dataio::ImageStack& stack, const HogParams& params, unsigned threads) {
    if (stack.count == 0) throw ValidationError("hog_features: empty image stack");
    const HogLayout l = hog_layout(stack.height, stack.width, params);
    Matrix m(stack.count, l.dims);
    parallel_for(stack.count, threads, [&](std::size_t i) {
        const auto row = hog_descriptor(stack.image(i), stack.height, stack.width, params);
        std::copy(row.begin(), row.end(), m.row(i).begin());
    });
    return FeatureMatrix{std::move(m), FeatureSource::hog};
}

} // namespace divscore::features
