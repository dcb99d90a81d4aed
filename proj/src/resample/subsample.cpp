#include "divscore/resample.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace divscore::resample {

std::vector<std::size_t> stratified_subsample(std::span<const int> labels, double fraction, std::uint64_t seed) {
    if (labels.empty()) throw ValidationError("stratified_subsample: empty label list");
    if (!(fraction > 0.0 && fraction <= 1.0)) throw ValidationError("stratified_subsample: fraction must be in (0, 1]");

    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

    Rng rng(seed);
    std::vector<std::size_t> picked;
    for (auto& [label, members] : by_class) {
        const auto want = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::llround(fraction * static_cast<double>(members.size()))));
        const std::size_t take = std::min(want, members.size());
        // Partial Fisher–Yates: the first `take` slots become the sample.
        for (std::size_t i = 0; i < take; ++i) std::swap(members[i], members[i + rng.below(members.size() - i)]);
        picked.insert(picked.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(take));
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

} // namespace divscore::resample
