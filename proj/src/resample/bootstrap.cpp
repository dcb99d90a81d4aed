#include "divscore/parallel.hpp"
#include "divscore/resample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace divscore::resample {

double percentile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw ValidationError("percentile of an empty list");
    const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BootstrapCI bootstrap_ci(const Statistic& statistic, std::size_t n, std::size_t reps, double level, std::uint64_t seed,
                         unsigned threads) {
    if (reps < 2) throw ValidationError("bootstrap_ci: need at least 2 resamples");
    if (n == 0) throw ValidationError("bootstrap_ci: empty dataset");
    if (!(level > 0.0 && level < 1.0)) throw ValidationError("bootstrap_ci: level must be in (0, 1)");

    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});

    BootstrapCI ci;
    ci.reps = reps;
    ci.level = level;
    ci.point = statistic(all);

    std::vector<double> stats(reps);
    parallel_for(reps, threads, [&](std::size_t r) {
        const std::uint64_t rep_seed = seed + r;
        Rng rng(rep_seed);
        std::vector<std::size_t> draw(n);
        for (auto& idx : draw) idx = rng.below(n);
        try {
            stats[r] = statistic(draw);
        } catch (const std::exception& e) {
            throw BootstrapError("bootstrap resample with seed " + std::to_string(rep_seed) + " failed: " + e.what(),
                                 rep_seed);
        }
    });
    std::sort(stats.begin(), stats.end());
    ci.lo = percentile_sorted(stats, (1.0 - level) / 2.0);
    ci.hi = percentile_sorted(stats, (1.0 + level) / 2.0);
    return ci;
}

} // namespace divscore::resample
