// AArch64 only; Advanced SIMD is architecturally guaranteed there.
#include "kernels_impl.hpp"

#include <arm_neon.h>

namespace divscore::simd::detail {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_squares_neon(const double* a, std::size_t n) {
    return dot_neon(a, a, n);
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void rotate_neon(double* x, double* y, std::size_t n, double c, double s) {
    const float64x2_t vc = vdupq_n_f64(c);
    const float64x2_t vs = vdupq_n_f64(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t xi = vld1q_f64(x + i);
        const float64x2_t yi = vld1q_f64(y + i);
        vst1q_f64(x + i, vfmsq_f64(vmulq_f64(vc, xi), vs, yi));
        vst1q_f64(y + i, vfmaq_f64(vmulq_f64(vc, yi), vs, xi));
    }
    for (; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

} // namespace

const KernelTable neon_table{
    Isa::neon, dot_neon, sum_squares_neon, axpy_neon, rotate_neon,
};

} // namespace divscore::simd::detail
