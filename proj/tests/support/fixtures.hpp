#pragma once

#include "divscore/matrix.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace fixture {

// Entries uniform in [lo, hi).
divscore::Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo = -1.0,
                               double hi = 1.0);
divscore::Matrix random_symmetric(std::size_t n, std::uint64_t seed);
// Random Gram matrix BBᵀ/cols (positive semidefinite, rank ≤ cols).
divscore::Matrix random_psd(std::size_t n, std::size_t rank, std::uint64_t seed);
// Orthogonal matrix from Gram–Schmidt on random columns.
divscore::Matrix random_orthogonal(std::size_t n, std::uint64_t seed);

double max_abs_diff(const divscore::Matrix& a, const divscore::Matrix& b);

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

} // namespace fixture
