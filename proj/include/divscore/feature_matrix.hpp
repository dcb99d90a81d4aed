#pragma once

#include "divscore/matrix.hpp"

#include <string_view>

namespace divscore {

enum class FeatureSource { pixel, hog, external };

std::string_view to_string(FeatureSource source) noexcept;

// n×d per-sample feature rows. Rows are finite, n ≥ 1, d ≥ 1.
struct FeatureMatrix {
    Matrix values;
    FeatureSource source = FeatureSource::external;

    std::size_t samples() const noexcept { return values.rows(); }
    std::size_t dims() const noexcept { return values.cols(); }
};

// Checks the invariants above; throws ValidationError.
FeatureMatrix make_feature_matrix(Matrix values, FeatureSource source);

} // namespace divscore
