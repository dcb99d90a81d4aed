#include "divscore/error.hpp"
#include "divscore/numeric.hpp"
#include "divscore/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace divscore::numeric {
namespace {

double off_diagonal_norm(const Matrix& a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) acc += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(acc);
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    for (double v : a.values()) m = std::max(m, std::abs(v));
    return m;
}

// One Jacobi rotation zeroing a(p, q). Rows p and q are rotated with the
// vector kernel; columns p and q are then restored from them by symmetry.
void rotate_pair(Matrix& a, Matrix* vt, std::size_t p, std::size_t q) {
    const double apq = a(p, q);
    if (apq == 0.0) return;
    const double app = a(p, p);
    const double aqq = a(q, q);
    const double theta = (aqq - app) / (2.0 * apq);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    simd::rotate(a.row(p), a.row(q), c, s);
    a(p, p) = app - t * apq;
    a(q, q) = aqq + t * apq;
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i) {
        if (i == p || i == q) continue;
        a(i, p) = a(p, i);
        a(i, q) = a(q, i);
    }
    if (vt != nullptr) simd::rotate(vt->row(p), vt->row(q), c, s);
}

} // namespace

EigenSpectrum sym_eig(const Matrix& input, const EigOptions& options) {
    if (input.rows() != input.cols()) throw ValidationError("sym_eig: matrix is not square");
    const std::size_t n = input.rows();
    const double scale = std::max(1.0, max_abs(input));
    if (asymmetry(input) > 1e-10 * scale) throw ValidationError("sym_eig: matrix is not symmetric");

    Matrix a = symmetrized(input);
    Matrix vt;
    if (options.want_vectors) vt = Matrix::identity(n);

    const double norm = frobenius_norm(a);
    bool converged = norm == 0.0;
    for (int sweep = 0; !converged && sweep <= options.max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) <= options.tol * norm) {
            converged = true;
            break;
        }
        if (sweep == options.max_sweeps) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) rotate_pair(a, options.want_vectors ? &vt : nullptr, p, q);
    }
    if (!converged) {
        throw NumericError("sym_eig: no convergence after " + std::to_string(options.max_sweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    EigenSpectrum out;
    out.values.reserve(n);
    for (std::size_t k : order) out.values.push_back(a(k, k));
    if (options.want_vectors) {
        Matrix v(n, n);
        for (std::size_t col = 0; col < n; ++col) {
            auto src = vt.row(order[col]);
            for (std::size_t r = 0; r < n; ++r) v(r, col) = src[r];
        }
        out.vectors = std::move(v);
    }
    return out;
}

std::vector<double> clamp_psd(std::vector<double> values, double rel_tol) {
    double largest = 0.0;
    for (double v : values) largest = std::max(largest, std::abs(v));
    const double tol = rel_tol * largest;
    for (double& v : values) {
        if (v < -tol) {
            throw NumericError("matrix is not positive semidefinite: eigenvalue " + std::to_string(v));
        }
        if (v < 0.0) v = 0.0;
    }
    return values;
}

Matrix psd_sqrt(const Matrix& s) {
    EigOptions options;
    options.want_vectors = true;
    EigenSpectrum spectrum = sym_eig(s, options);
    const std::vector<double> lambda = clamp_psd(spectrum.values);
    const Matrix& v = *spectrum.vectors;
    const std::size_t n = s.rows();
    // V·diag(√λ)·Vᵀ, built from rows of Vᵀ scaled by λ^{1/4} on both sides.
    Matrix scaled = v.transpose();
    for (std::size_t k = 0; k < n; ++k) {
        const double w = std::sqrt(std::sqrt(lambda[k]));
        for (double& x : scaled.row(k)) x *= w;
    }
    const Matrix cols = scaled.transpose();
    Matrix root(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double value = simd::dot(cols.row(i), cols.row(j));
            root(i, j) = value;
            root(j, i) = value;
        }
    return root;
}

double trace_sqrt_product_with_root(const Matrix& s1_root, const Matrix& s2) {
    if (s1_root.rows() != s2.rows() || s2.rows() != s2.cols()) {
        throw ValidationError("trace_sqrt_product: dimension mismatch");
    }
    const Matrix m = symmetrized(multiply(multiply(s1_root, s2), s1_root));
    const std::vector<double> lambda = clamp_psd(sym_eig(m).values);
    // Null directions come back as roundoff of order n·ε·λ_max, and √ would
    // inflate that to ~1e-8. Treat everything below the roundoff floor as 0.
    const double floor = 64.0 * static_cast<double>(m.rows()) * std::numeric_limits<double>::epsilon() *
                         (lambda.empty() ? 0.0 : lambda.front());
    double total = 0.0;
    for (double l : lambda)
        if (l > floor) total += std::sqrt(l);
    return total;
}

double trace_sqrt_product(const Matrix& s1, const Matrix& s2) {
    return trace_sqrt_product_with_root(psd_sqrt(s1), s2);
}

} // namespace divscore::numeric
