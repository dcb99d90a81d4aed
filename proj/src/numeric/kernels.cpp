#include "divscore/error.hpp"
#include "divscore/numeric.hpp"
#include "divscore/simd/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace divscore::numeric {

GaussianSummary gaussian_summary(const Matrix& features) {
    const std::size_t n = features.rows();
    const std::size_t d = features.cols();
    if (n < 2) throw ValidationError("gaussian_summary needs at least 2 samples");

    GaussianSummary out;
    out.mean.assign(d, 0.0);
    for (std::size_t r = 0; r < n; ++r) simd::axpy(1.0, features.row(r), out.mean);
    for (double& m : out.mean) m /= static_cast<double>(n);

    Matrix centered_t(d, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c) centered_t(c, r) = features(r, c) - out.mean[c];

    out.covariance = Matrix(d, d);
    const double denom = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            const double v = simd::dot(centered_t.row(i), centered_t.row(j)) / denom;
            out.covariance(i, j) = v;
            out.covariance(j, i) = v;
        }
    return out;
}

Matrix normalized_rows(const Matrix& features) {
    Matrix out = features;
    for (std::size_t r = 0; r < out.rows(); ++r) {
        const double norm = std::sqrt(simd::sum_squares(out.row(r)));
        if (norm == 0.0) continue;
        for (double& v : out.row(r)) v /= norm;
    }
    return out;
}

Matrix cosine_kernel(const Matrix& features) {
    const std::size_t n = features.rows();
    const Matrix unit = normalized_rows(features);
    std::vector<bool> zero(n);
    for (std::size_t r = 0; r < n; ++r) zero[r] = simd::sum_squares(features.row(r)) == 0.0;

    Matrix k(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        k(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double v;
            if (zero[i] || zero[j]) {
                v = (zero[i] && zero[j]) ? 1.0 : 0.0;
            } else {
                v = std::clamp(simd::dot(unit.row(i), unit.row(j)), -1.0, 1.0);
            }
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

Matrix gram_dual(const Matrix& g) {
    const Matrix gt = g.transpose();
    const std::size_t d = gt.rows();
    Matrix out(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            const double v = simd::dot(gt.row(i), gt.row(j));
            out(i, j) = v;
            out(j, i) = v;
        }
    return out;
}

} // namespace divscore::numeric
