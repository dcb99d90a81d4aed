#include "divscore/error.hpp"
#include "divscore/features.hpp"

namespace divscore::features {

FeatureMatrix pixel_features(const dataio::ImageStack& stack) {
    if (stack.count == 0) throw ValidationError("pixel_features: empty image stack");
    Matrix m(stack.count, stack.image_size());
    for (std::size_t i = 0; i < stack.count; ++i) {
        auto src = stack.image(i);
        auto dst = m.row(i);
        for (std::size_t p = 0; p < src.size(); ++p) dst[p] = static_cast<double>(src[p]) / 255.0;
    }
    return FeatureMatrix{std::move(m), FeatureSource::pixel};
}

} // namespace divscore::features
