#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace divscore::simd {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa) noexcept;

// Inner loops shared by the numeric, metric and trainer code. Every ISA
// variant computes the same quantity as the scalar reference up to
// floating-point reassociation.
struct KernelTable {
    Isa isa;
    double (*dot)(const double* a, const double* b, std::size_t n);
    double (*sum_squares)(const double* a, std::size_t n);
    // y += alpha * x
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // (x, y) <- (c*x - s*y, s*x + c*y), elementwise
    void (*rotate)(double* x, double* y, std::size_t n, double c, double s);
};

const KernelTable& scalar_kernels() noexcept;

// Kernel table for a specific ISA, or nullopt when it was not compiled in or
// the running CPU lacks it.
std::optional<const KernelTable*> kernels_for(Isa isa) noexcept;

// The active table. Chosen once from CPU features; DIVSCORE_SIMD=scalar in the
// environment forces the reference path.
const KernelTable& active() noexcept;

// Test hook: pin the active table (nullopt restores automatic selection).
// Not thread-safe with respect to concurrent kernel calls.
void force_isa(std::optional<Isa> isa);

inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
    return active().dot(a.data(), b.data(), a.size());
}

inline double sum_squares(std::span<const double> a) noexcept {
    return active().sum_squares(a.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept {
    active().axpy(alpha, x.data(), y.data(), x.size());
}

inline void rotate(std::span<double> x, std::span<double> y, double c, double s) noexcept {
    active().rotate(x.data(), y.data(), x.size(), c, s);
}

} // namespace divscore::simd
