#include "divscore/error.hpp"
#include "divscore/toygen.hpp"

#include <algorithm>
#include <cmath>

namespace divscore::toygen {

std::vector<std::uint8_t> skeletonize(std::vector<std::uint8_t> m, std::size_t h, std::size_t w) {
    auto at = [&](long y, long x) -> int {
        if (y < 0 || x < 0 || y >= static_cast<long>(h) || x >= static_cast<long>(w)) return 0;
        return m[static_cast<std::size_t>(y) * w + static_cast<std::size_t>(x)] ? 1 : 0;
    };
    std::vector<std::size_t> doomed;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int pass = 0; pass < 2; ++pass) {
            doomed.clear();
            for (long y = 0; y < static_cast<long>(h); ++y)
                for (long x = 0; x < static_cast<long>(w); ++x) {
                    if (!at(y, x)) continue;
                    // P2..P9 clockwise from north
                    const int p[8] = {at(y - 1, x),     at(y - 1, x + 1), at(y, x + 1), at(y + 1, x + 1),
                                      at(y + 1, x),     at(y + 1, x - 1), at(y, x - 1), at(y - 1, x - 1)};
                    int b = 0, a = 0;
                    for (int i = 0; i < 8; ++i) {
                        b += p[i];
                        if (p[i] == 0 && p[(i + 1) % 8] == 1) ++a;
                    }
                    if (b < 2 || b > 6 || a != 1) continue;
                    const bool c1 = pass == 0 ? p[0] * p[2] * p[4] == 0 : p[0] * p[2] * p[6] == 0;
                    const bool c2 = pass == 0 ? p[2] * p[4] * p[6] == 0 : p[0] * p[4] * p[6] == 0;
                    if (c1 && c2) doomed.push_back(static_cast<std::size_t>(y) * w + static_cast<std::size_t>(x));
                }
            for (auto i : doomed) m[i] = 0;
            if (!doomed.empty()) changed = true;
        }
    }
    return m;
}

Morphometrics morphometrics(std::span<const std::uint8_t> image, std::size_t height, std::size_t width) {
    if (image.size() != height * width) throw ValidationError("morphometrics: image size does not match its dimensions");
    std::vector<std::uint8_t> mask(image.size());
    double area = 0, sx = 0, sy = 0;
    std::size_t x_lo = width, x_hi = 0, y_lo = height, y_hi = 0;
    for (std::size_t y = 0; y < height; ++y)
        for (std::size_t x = 0; x < width; ++x) {
            if (image[y * width + x] < kThreshold) continue;
            mask[y * width + x] = 1;
            area += 1;
            sx += static_cast<double>(x);
            sy += static_cast<double>(y);
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    if (area == 0) throw ValidationError("morphometrics: image has no foreground");

    Morphometrics m;
    m.area = area;
    const auto skel = skeletonize(mask, height, width);
    for (auto v : skel) m.length += v;
    m.thickness = m.area / m.length;

    const double mx = sx / area, my = sy / area;
    double mu11 = 0, mu02 = 0;
    for (std::size_t y = 0; y < height; ++y)
        for (std::size_t x = 0; x < width; ++x) {
            if (!mask[y * width + x]) continue;
            const double dx = static_cast<double>(x) - mx, dy = static_cast<double>(y) - my;
            mu11 += dx * dy;
            mu02 += dy * dy;
        }
    m.slant = mu02 > 0 ? std::atan(-mu11 / mu02) : 0.0;
    m.width = static_cast<double>(x_hi - x_lo + 1);
    m.height = static_cast<double>(y_hi - y_lo + 1);
    return m;
}

} // namespace divscore::toygen
