#pragma once

#include "divscore/dataio/idx.hpp"
#include "divscore/feature_matrix.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace divscore::features {

// Row i = pixels of image i divided by 255.
FeatureMatrix pixel_features(const dataio::ImageStack& stack);

struct HogParams {
    std::size_t cell = 8;   // pixels per cell side
    std::size_t bins = 9;   // unsigned orientation bins over [0°, 180°)
    std::size_t block = 2;  // cells per block side
    double eps = 1e-6;
};

struct HogLayout {
    std::size_t padded_height = 0;
    std::size_t padded_width = 0;
    std::size_t cells_y = 0;
    std::size_t cells_x = 0;
    std::size_t dims = 0;
};

// Images are zero-padded on the bottom/right to whole cells, and to at least
// one block of cells.
HogLayout hog_layout(std::size_t height, std::size_t width, const HogParams& params = {});

// Histogram of oriented gradients for one row-major grayscale image.
// Gradients use [-1, 0, 1] central differences with replicate borders.
// Bins index edge orientation (perpendicular to the gradient), so a vertical
// edge votes at 90°; votes are magnitude-weighted and linearly split between
// the two nearest bin centres (b + ½)·180°/bins. Overlapping blocks with a
// one-cell stride are L2-normalized as v / √(‖v‖² + eps²) and concatenated.
std::vector<double> hog_descriptor(std::span<const std::uint8_t> image, std::size_t height, std::size_t width,
                                   const HogParams& params = {});

// Descriptors for every image; rows are computed on up to `threads` workers.
FeatureMatrix hog_features(const dataio::ImageStack& stack, const HogParams& params = {}, unsigned threads = 1);

} // namespace divscore::features
