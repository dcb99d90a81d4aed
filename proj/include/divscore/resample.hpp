#pragma once

#include "divscore/error.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace divscore::resample {

// Seeded generator whose derived draws are identical on every platform
// (the standard distributions are implementation-defined, so none are used).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    // Uniform integer in [0, n), n > 0, without modulo bias.
    std::size_t below(std::size_t n);
    // Uniform double in [0, 1) with 53 random bits.
    double uniform();
    // Standard normal via Box–Muller.
    double normal();

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

// 64-bit FNV-1a of `text`, mixed with `seed` through a splitmix64 finalizer.
std::uint64_t seeded_hash(std::string_view text, std::uint64_t seed);

// Per class, max(1, round(fraction·count)) positions drawn without
// replacement. Returns positions into `labels`, ascending.
std::vector<std::size_t> stratified_subsample(std::span<const int> labels, double fraction, std::uint64_t seed);

struct BootstrapCI {
    double point = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t reps = 0;
    double level = 0.95;
};

// Statistic over a multiset of sample positions in [0, n).
using Statistic = std::function<double(std::span<const std::size_t>)>;

class BootstrapError : public Error {
public:
    BootstrapError(const std::string& what, std::uint64_t seed) : Error(what), seed_(seed) {}
    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
};

// Linear-interpolation percentile of sorted values at q ∈ [0, 1].
double percentile_sorted(std::span<const double> sorted, double q);

// Percentile bootstrap. Replicate r resamples n positions with replacement
// using seed + r; the interval is taken at (1 ∓ level)/2 and `point` is the
// statistic on all n positions. A failing replicate raises BootstrapError
// carrying that replicate's seed.
BootstrapCI bootstrap_ci(const Statistic& statistic, std::size_t n, std::size_t reps = 10, double level = 0.95,
                         std::uint64_t seed = 0, unsigned threads = 1);

struct FoldAssignment {
    std::size_t k = 0;
    std::vector<std::size_t> fold_of; // per sample

    std::vector<std::size_t> members(std::size_t fold) const;
    std::vector<std::size_t> complement(std::size_t fold) const;
};

// Greedy group-aware stratified k-fold. Binary labels: groups are ordered by
// (positives desc, size desc, seeded hash of id) and each goes to the fold
// with the fewest positives, then fewest samples, then lowest index.
// More than two classes: groups are ordered by (size desc, hash) and go to the
// fold with the fewest samples of the group's majority class, then fewest
// samples, then lowest index. Groups are never split.
FoldAssignment group_stratified_kfold(std::span<const int> labels, std::span<const std::string> group_ids,
                                      std::size_t k = 5, std::uint64_t seed = 0);

// "sample_id,fold" rows.
std::string format_folds_csv(const FoldAssignment& folds, std::span<const std::string> sample_ids);
FoldAssignment parse_folds_csv(std::string_view text, std::span<const std::string> sample_ids);

} // namespace divscore::resample
