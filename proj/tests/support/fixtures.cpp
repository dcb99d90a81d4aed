#include "support/fixtures.hpp"

#include "divscore/resample.hpp"

#include <atomic>
#include <cmath>
#include <unistd.h>

namespace fixture {

using divscore::Matrix;

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo, double hi) {
    divscore::resample::Rng rng(seed);
    Matrix m(rows, cols);
    for (double& v : m.values()) v = lo + (hi - lo) * rng.uniform();
    return m;
}

Matrix random_symmetric(std::size_t n, std::uint64_t seed) {
    return divscore::symmetrized(random_matrix(n, n, seed));
}

Matrix random_psd(std::size_t n, std::size_t rank, std::uint64_t seed) {
    const Matrix b = random_matrix(n, rank, seed);
    Matrix out = divscore::multiply(b, b.transpose());
    for (double& v : out.values()) v /= static_cast<double>(rank);
    return divscore::symmetrized(out);
}

Matrix random_orthogonal(std::size_t n, std::uint64_t seed) {
    Matrix q = random_matrix(n, n, seed);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t p = 0; p < c; ++p) {
            double d = 0;
            for (std::size_t r = 0; r < n; ++r) d += q(r, c) * q(r, p);
            for (std::size_t r = 0; r < n; ++r) q(r, c) -= d * q(r, p);
        }
        double norm = 0;
        for (std::size_t r = 0; r < n; ++r) norm += q(r, c) * q(r, c);
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < n; ++r) q(r, c) /= norm;
    }
    return q;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.values().size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    return m;
}

TempDir::TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("divscore_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

} // namespace fixture
