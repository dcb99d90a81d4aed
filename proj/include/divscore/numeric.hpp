#pragma once

#include "divscore/matrix.hpp"

#include <optional>
#include <vector>

namespace divscore::numeric {

struct GaussianSummary {
    std::vector<double> mean;
    Matrix covariance; // unbiased, divides by n - 1
};

// Column means and covariance of the rows of `features`. Requires n ≥ 2.
GaussianSummary gaussian_summary(const Matrix& features);

struct EigenSpectrum {
    std::vector<double> values;   // descending
    std::optional<Matrix> vectors; // column k pairs with values[k]
};

struct EigOptions {
    double tol = 1e-12; // stop once off-diagonal norm < tol·‖A‖_F
    int max_sweeps = 50;
    bool want_vectors = false;
};

// Cyclic Jacobi eigensolver for symmetric input. The matrix is symmetrized
// first; asymmetry beyond 1e-10 (relative to its largest entry) is rejected.
// Throws NumericError when `max_sweeps` sweeps do not converge.
EigenSpectrum sym_eig(const Matrix& a, const EigOptions& options = {});

// Clamp eigenvalues of a matrix that should be PSD: values within
// rel_tol·max|λ| below zero become 0, larger negatives throw NumericError.
std::vector<double> clamp_psd(std::vector<double> values, double rel_tol = 1e-8);

// Rows scaled to unit L2 norm; zero rows stay zero.
Matrix normalized_rows(const Matrix& features);

// Cosine similarity of all row pairs. sim(0, x) = 0 for x ≠ 0 and
// sim(0, 0) = 1, so the result is symmetric with a unit diagonal.
Matrix cosine_kernel(const Matrix& features);

// GᵀG for an n×d matrix G (the d×d dual of the n×n Gram GGᵀ).
Matrix gram_dual(const Matrix& g);

// Principal square root of a PSD matrix through its eigendecomposition.
Matrix psd_sqrt(const Matrix& s);

// Tr((S1·S2)^{1/2}) evaluated as Σ√λ of S1^{1/2}·S2·S1^{1/2}. Eigenvalues
// below 64·n·ε·λ_max count as zero.
double trace_sqrt_product(const Matrix& s1, const Matrix& s2);

// Same, with S1^{1/2} already known.
double trace_sqrt_product_with_root(const Matrix& s1_root, const Matrix& s2);

} // namespace divscore::numeric
