#include "divscore/matrix.hpp"

#include "divscore/error.hpp"
#include "divscore/feature_matrix.hpp"
#include "divscore/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace divscore {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), data_(std::move(values)) {
    if (data_.size() != rows * cols) {
        throw ValidationError("matrix payload has " + std::to_string(data_.size()) +
                              " values, expected " + std::to_string(rows * cols));
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) throw ValidationError("ragged rows");
        std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
    Matrix out(indices.size(), cols_);
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] >= rows_) throw ValidationError("row index out of range");
        auto src = row(indices[k]);
        std::copy(src.begin(), src.end(), out.row(k).begin());
    }
    return out;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw ValidationError("matrix product dimension mismatch");
    const Matrix bt = b.transpose();
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = simd::dot(a.row(i), bt.row(j));
    return out;
}

double trace(const Matrix& a) {
    double t = 0.0;
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
    return t;
}

double frobenius_norm(const Matrix& a) { return std::sqrt(simd::sum_squares(a.values())); }

double asymmetry(const Matrix& a) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - a(j, i)));
    return worst;
}

Matrix symmetrized(const Matrix& a) {
    if (a.rows() != a.cols()) throw ValidationError("matrix is not square");
    Matrix s = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            s(i, j) = v;
            s(j, i) = v;
        }
    return s;
}

std::string_view to_string(FeatureSource source) noexcept {
    switch (source) {
    case FeatureSource::pixel: return "pixel";
    case FeatureSource::hog: return "hog";
    case FeatureSource::external: return "external";
    }
    return "external";
}

FeatureMatrix make_feature_matrix(Matrix values, FeatureSource source) {
    if (values.rows() == 0 || values.cols() == 0) throw ValidationError("feature matrix is empty");
    for (std::size_t r = 0; r < values.rows(); ++r)
        for (double v : values.row(r))
            if (!std::isfinite(v)) throw ValidationError("feature row " + std::to_string(r) + " is not finite");
    return FeatureMatrix{std::move(values), source};
}

} // namespace divscore
