#include "divscore/error.hpp"
#include "divscore/resample.hpp"
#include "divscore/toygen.hpp"

#include <algorithm>
#include <cmath>

namespace divscore::toygen {

std::string_view to_string(PerturbationKind kind) noexcept {
    switch (kind) {
    case PerturbationKind::plain: return "plain";
    case PerturbationKind::thin: return "thin";
    case PerturbationKind::thick: return "thick";
    case PerturbationKind::fracture: return "fracture";
    case PerturbationKind::swelling: return "swelling";
    }
    return "plain";
}

PerturbationKind parse_kind(std::string_view text) {
    for (auto k : kAllKinds)
        if (to_string(k) == text) return k;
    throw ValidationError("unknown perturbation '" + std::string(text) + "'");
}

std::string_view adjective(PerturbationKind kind) noexcept {
    switch (kind) {
    case PerturbationKind::plain: return "plain";
    case PerturbationKind::thin: return "thin";
    case PerturbationKind::thick: return "thick";
    case PerturbationKind::fracture: return "fractured";
    case PerturbationKind::swelling: return "swollen";
    }
    return "plain";
}

std::string caption(int label, PerturbationKind kind) {
    static const char* const words[] = {"zero", "one", "two", "three", "four",
                                        "five", "six", "seven", "eight", "nine"};
    if (label < 0 || label > 9) throw ValidationError("caption label must be in [0, 9]");
    return "Image of a handwritten " + std::string(adjective(kind)) + " " + words[label];
}

namespace {

std::vector<std::uint8_t> morph(std::span<const std::uint8_t> img, std::size_t h, std::size_t w, bool erode) {
    std::vector<std::uint8_t> out(img.size());
    auto px = [&](long y, long x) -> std::uint8_t {
        if (y < 0 || x < 0 || y >= static_cast<long>(h) || x >= static_cast<long>(w)) return 0;
        return img[static_cast<std::size_t>(y) * w + static_cast<std::size_t>(x)];
    };
    for (long y = 0; y < static_cast<long>(h); ++y)
        for (long x = 0; x < static_cast<long>(w); ++x) {
            const std::uint8_t v[5] = {px(y, x), px(y - 1, x), px(y + 1, x), px(y, x - 1), px(y, x + 1)};
            out[static_cast<std::size_t>(y) * w + static_cast<std::size_t>(x)] =
                erode ? *std::min_element(v, v + 5) : *std::max_element(v, v + 5);
        }
    return out;
}

std::vector<std::size_t> foreground(std::span<const std::uint8_t> img) {
    std::vector<std::size_t> fg;
    for (std::size_t i = 0; i < img.size(); ++i)
        if (img[i] >= kThreshold) fg.push_back(i);
    return fg;
}

std::vector<std::uint8_t> fracture(std::span<const std::uint8_t> img, std::size_t h, std::size_t w,
                                   resample::Rng& rng) {
    std::vector<std::uint8_t> out(img.begin(), img.end());
    for (int seg = 0; seg < 2; ++seg) {
        const auto fg = foreground(out);
        if (fg.empty()) break;
        const std::size_t at = fg[rng.below(fg.size())];
        const double cy = static_cast<double>(at / w), cx = static_cast<double>(at % w);

        // Local stroke direction from foreground second moments in a 7×7 window;
        // the cut runs perpendicular to it.
        double sxx = 0, syy = 0, sxy = 0, mx = 0, my = 0, cnt = 0;
        for (long dy = -3; dy <= 3; ++dy)
            for (long dx = -3; dx <= 3; ++dx) {
                const long y = static_cast<long>(cy) + dy, x = static_cast<long>(cx) + dx;
                if (y < 0 || x < 0 || y >= static_cast<long>(h) || x >= static_cast<long>(w)) continue;
                if (out[static_cast<std::size_t>(y) * w + static_cast<std::size_t>(x)] < kThreshold) continue;
                mx += static_cast<double>(dx);
                my += static_cast<double>(dy);
                sxx += static_cast<double>(dx * dx);
                syy += static_cast<double>(dy * dy);
                sxy += static_cast<double>(dx * dy);
                cnt += 1.0;
            }
        mx /= cnt;
        my /= cnt;
        sxx = sxx / cnt - mx * mx;
        syy = syy / cnt - my * my;
        sxy = sxy / cnt - mx * my;
        const double stroke_angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
        const double ux = -std::sin(stroke_angle), uy = std::cos(stroke_angle);

        const double ax = cx - 3.0 * ux, ay = cy - 3.0 * uy;
        const double bx = cx + 3.0 * ux, by = cy + 3.0 * uy;
        for (std::size_t y = 0; y < h; ++y)
            for (std::size_t x = 0; x < w; ++x) {
                const double px = static_cast<double>(x), py = static_cast<double>(y);
                double t = ((px - ax) * (bx - ax) + (py - ay) * (by - ay)) / 36.0;
                t = std::clamp(t, 0.0, 1.0);
                const double dx = px - (ax + t * (bx - ax)), dy = py - (ay + t * (by - ay));
                if (dx * dx + dy * dy <= 1.0) out[y * w + x] = 0;
            }
    }
    return out;
}

double bilinear(std::span<const std::uint8_t> img, std::size_t h, std::size_t w, double y, double x) {
    auto px = [&](long yy, long xx) -> double {
        if (yy < 0 || xx < 0 || yy >= static_cast<long>(h) || xx >= static_cast<long>(w)) return 0.0;
        return img[static_cast<std::size_t>(yy) * w + static_cast<std::size_t>(xx)];
    };
    const double fy = std::floor(y), fx = std::floor(x);
    const double ty = y - fy, tx = x - fx;
    const long y0 = static_cast<long>(fy), x0 = static_cast<long>(fx);
    return (1 - ty) * ((1 - tx) * px(y0, x0) + tx * px(y0, x0 + 1)) +
           ty * ((1 - tx) * px(y0 + 1, x0) + tx * px(y0 + 1, x0 + 1));
}

std::vector<std::uint8_t> swell(std::span<const std::uint8_t> img, std::size_t h, std::size_t w, resample::Rng& rng) {
    constexpr double radius = 7.0;
    const auto fg = foreground(img);
    const std::size_t at = fg[rng.below(fg.size())];
    const double cy = static_cast<double>(at / w), cx = static_cast<double>(at % w);
    std::vector<std::uint8_t> out(img.begin(), img.end());
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) {
            const double dy = static_cast<double>(y) - cy, dx = static_cast<double>(x) - cx;
            const double r = std::sqrt(dx * dx + dy * dy);
            if (r >= radius) continue;
            // source radius R·(r/R)^1.5 pulls content outward
            const double f = std::sqrt(r / radius);
            const double v = bilinear(img, h, w, cy + dy * f, cx + dx * f);
            out[y * w + x] = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
        }
    return out;
}

} // namespace

std::vector<std::uint8_t> perturb(std::span<const std::uint8_t> image, std::size_t height, std::size_t width,
                                  PerturbationKind kind, std::uint64_t seed) {
    if (image.size() != height * width) throw ValidationError("perturb: image size does not match its dimensions");
    if (foreground(image).empty()) throw ValidationError("perturb: image has no foreground");
    resample::Rng rng(seed);
    switch (kind) {
    case PerturbationKind::plain: return {image.begin(), image.end()};
    case PerturbationKind::thin: return morph(image, height, width, true);
    case PerturbationKind::thick: return morph(image, height, width, false);
    case PerturbationKind::fracture: return fracture(image, height, width, rng);
    case PerturbationKind::swelling: return swell(image, height, width, rng);
    }
    return {image.begin(), image.end()};
}

} // namespace divscore::toygen
