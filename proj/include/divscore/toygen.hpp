#pragma once

#include "divscore/dataio/idx.hpp"
#include "divscore/dataio/scenario.hpp"
#include "divscore/dataio/table.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace divscore::toygen {

inline constexpr std::size_t kSide = 28;
inline constexpr std::uint8_t kThreshold = 128;

enum class PerturbationKind { plain, thin, thick, fracture, swelling };

inline constexpr std::array<PerturbationKind, 5> kAllKinds{PerturbationKind::plain, PerturbationKind::thin,
                                                           PerturbationKind::thick, PerturbationKind::fracture,
                                                           PerturbationKind::swelling};

std::string_view to_string(PerturbationKind kind) noexcept;
PerturbationKind parse_kind(std::string_view text);
// "plain", "thin", "thick", "fractured", "swollen"
std::string_view adjective(PerturbationKind kind) noexcept;

struct GlyphBatch {
    dataio::ImageStack images;
    std::vector<int> labels; // image i has label i mod 10
};

// Procedural 28×28 digit-like strokes: a polyline template per class, jittered
// by a seeded affine warp, vertex noise and stroke width.
GlyphBatch base_glyphs(std::size_t n, std::uint64_t seed);

// Fracture: up to two background segments, 6 px long and 2 px wide, across
// stroke points. Swelling: radius-7 radial magnification around a stroke
// point, bilinear resampling. Thin/thick: one grayscale erosion/dilation with
// a 3×3 cross. Throws ValidationError when the input has no foreground.
std::vector<std::uint8_t> perturb(std::span<const std::uint8_t> image, std::size_t height, std::size_t width,
                                  PerturbationKind kind, std::uint64_t seed);

std::string caption(int label, PerturbationKind kind);

struct Morphometrics {
    double area = 0.0;      // foreground pixels
    double length = 0.0;    // skeleton pixels
    double thickness = 0.0; // area / length
    double slant = 0.0;     // radians, atan(−μ11/μ02)
    double width = 0.0;     // bounding box
    double height = 0.0;

    std::vector<double> as_vector() const { return {area, length, thickness, slant, width, height}; }
};

inline const std::vector<std::string> kMorphometricColumns{"area", "length", "thickness", "slant", "width", "height"};

// Foreground = pixels ≥ 128; skeleton by Zhang–Suen thinning.
Morphometrics morphometrics(std::span<const std::uint8_t> image, std::size_t height, std::size_t width);

// Skeleton mask (1 = kept) of a binary mask, Zhang–Suen.
std::vector<std::uint8_t> skeletonize(std::vector<std::uint8_t> mask, std::size_t height, std::size_t width);

struct ToyDataset {
    dataio::DatasetTable table;
    dataio::ImageStack images;
    dataio::ScenarioConfig scenarios;
};

// n_per_kind base glyphs, each rendered in all five kinds (tagged split=train,
// grouped by base glyph), plus `reference_n` fresh plain glyphs tagged
// split=test. Declares the five single-kind scenarios, the four unions with
// plain, and, when reference_n > 0, a "reference" scenario used as the FID
// reference.
ToyDataset build_scenarios(std::size_t n_per_kind, std::uint64_t seed, std::size_t reference_n = 0);

} // namespace divscore::toygen
