#include "divscore/resample.hpp"
#include "divscore/toygen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace divscore::toygen {

namespace {

struct Pt {
    double x, y;
};
using Polyline = std::vector<Pt>;

Polyline ellipse(double cx, double cy, double rx, double ry, int steps = 14) {
    Polyline p;
    for (int i = 0; i <= steps; ++i) {
        const double a = 2.0 * std::numbers::pi * i / steps;
        p.push_back({cx + rx * std::cos(a), cy + ry * std::sin(a)});
    }
    return p;
}

// Unit-box templates; x to the right, y downward.
const std::vector<std::vector<Polyline>>& templates() {
    static const std::vector<std::vector<Polyline>> t = {
        {ellipse(0.5, 0.5, 0.36, 0.48)},
        {{{0.5, 0.0}, {0.5, 1.0}}, {{0.25, 0.25}, {0.5, 0.0}}},
        {{{0.15, 0.25}, {0.35, 0.04}, {0.7, 0.04}, {0.85, 0.25}, {0.8, 0.45}, {0.15, 1.0}, {0.9, 1.0}}},
        {{{0.15, 0.08}, {0.8, 0.04}, {0.45, 0.45}, {0.85, 0.68}, {0.62, 1.0}, {0.15, 0.92}}},
        {{{0.7, 1.0}, {0.7, 0.0}, {0.1, 0.65}, {0.9, 0.65}}},
        {{{0.85, 0.0}, {0.2, 0.0}, {0.15, 0.45}, {0.6, 0.4}, {0.85, 0.65}, {0.65, 0.95}, {0.15, 0.9}}},
        {{{0.75, 0.0}, {0.3, 0.35}, {0.15, 0.7}, {0.35, 1.0}, {0.75, 0.95}, {0.8, 0.65}, {0.45, 0.5}, {0.2, 0.7}}},
        {{{0.1, 0.0}, {0.9, 0.0}, {0.4, 1.0}}},
        {ellipse(0.5, 0.24, 0.28, 0.22), ellipse(0.5, 0.72, 0.34, 0.27)},
        {ellipse(0.5, 0.3, 0.3, 0.28), {{0.8, 0.3}, {0.7, 1.0}}},
    };
    return t;
}

double segment_distance(Pt p, Pt a, Pt b) {
    const double vx = b.x - a.x, vy = b.y - a.y;
    const double len2 = vx * vx + vy * vy;
    double t = len2 > 0.0 ? ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dx = p.x - (a.x + t * vx), dy = p.y - (a.y + t * vy);
    return std::sqrt(dx * dx + dy * dy);
}

void draw_glyph(int label, resample::Rng& rng, std::span<std::uint8_t> out) {
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform(); };
    const double scale = uniform(0.85, 1.1);
    const double shear = uniform(-0.25, 0.25);
    const double angle = uniform(-0.15, 0.15);
    const double tx = uniform(-1.5, 1.5), ty = uniform(-1.5, 1.5);
    const double radius = uniform(1.6, 2.2);
    const double ca = std::cos(angle), sa = std::sin(angle);

    std::vector<Polyline> strokes;
    for (const auto& line : templates()[static_cast<std::size_t>(label)]) {
        Polyline p;
        for (Pt v : line) {
            // unit box → 14×20 px centred box, jitter, shear, rotate, shift
            double x = (v.x + uniform(-0.04, 0.04) - 0.5) * 14.0 * scale;
            double y = (v.y + uniform(-0.04, 0.04) - 0.5) * 20.0 * scale;
            x += shear * y;
            p.push_back({13.5 + ca * x - sa * y + tx, 13.5 + sa * x + ca * y + ty});
        }
        strokes.push_back(std::move(p));
    }

    for (std::size_t y = 0; y < kSide; ++y)
        for (std::size_t x = 0; x < kSide; ++x) {
            double d = 1e9;
            const Pt p{static_cast<double>(x), static_cast<double>(y)};
            for (const auto& s : strokes)
                for (std::size_t i = 0; i + 1 < s.size(); ++i) d = std::min(d, segment_distance(p, s[i], s[i + 1]));
            const double v = std::clamp(radius + 0.5 - d, 0.0, 1.0);
            out[y * kSide + x] = static_cast<std::uint8_t>(std::lround(255.0 * v));
        }
}

} // namespace

GlyphBatch base_glyphs(std::size_t n, std::uint64_t seed) {
    GlyphBatch batch;
    batch.images = dataio::make_image_stack(n, kSide, kSide, std::vector<std::uint8_t>(n * kSide * kSide, 0));
    batch.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int label = static_cast<int>(i % 10);
        batch.labels[i] = label;
        resample::Rng rng(resample::seeded_hash("glyph:" + std::to_string(i), seed));
        draw_glyph(label, rng, batch.images.image(i));
    }
    return batch;
}

} // namespace divscore::toygen
