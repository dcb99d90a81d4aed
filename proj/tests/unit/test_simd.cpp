#include "divscore/simd/kernels.hpp"
#include "support/fixtures.hpp"

#include <catch_amalgamated.hpp>
#include <cmath>
#include <vector>

using namespace divscore;

namespace {

std::vector<const simd::KernelTable*> compiled_variants() {
    std::vector<const simd::KernelTable*> out;
    for (auto isa : {simd::Isa::avx2, simd::Isa::neon})
        if (auto t = simd::kernels_for(isa)) out.push_back(*t);
    return out;
}

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
    const auto m = fixture::random_matrix(1, n, seed);
    return {m.values().begin(), m.values().end()};
}

} // namespace

TEST_CASE("scalar table is always available") {
    REQUIRE(simd::kernels_for(simd::Isa::scalar).has_value());
    CHECK(simd::scalar_kernels().isa == simd::Isa::scalar);
}

TEST_CASE("scalar kernels on hand cases") {
    const auto& k = simd::scalar_kernels();
    const double a[] = {1, 2, 3};
    const double b[] = {4, -5, 6};
    CHECK(k.dot(a, b, 3) == 12.0);
    CHECK(k.sum_squares(a, 3) == 14.0);
    double y[] = {1, 1, 1};
    k.axpy(2.0, a, y, 3);
    CHECK(y[0] == 3.0);
    CHECK(y[2] == 7.0);
    double x[] = {1, 0};
    double z[] = {0, 1};
    k.rotate(x, z, 2, 0.0, 1.0); // x <- -z, z <- x
    CHECK(x[0] == 0.0);
    CHECK(x[1] == -1.0);
    CHECK(z[0] == 1.0);
    CHECK(z[1] == 0.0);
    CHECK(k.dot(a, b, 0) == 0.0);
}

TEST_CASE("every compiled variant matches the scalar reference") {
    const auto& ref = simd::scalar_kernels();
    for (const auto* var : compiled_variants()) {
        INFO("isa " << simd::to_string(var->isa));
        for (std::size_t n = 0; n <= 67; ++n) {
            const auto a = random_vec(n, 100 + n);
            const auto b = random_vec(n, 900 + n);
            const double scale = static_cast<double>(n) + 1.0;
            CHECK(std::abs(var->dot(a.data(), b.data(), n) - ref.dot(a.data(), b.data(), n)) <= 1e-13 * scale);
            CHECK(std::abs(var->sum_squares(a.data(), n) - ref.sum_squares(a.data(), n)) <= 1e-13 * scale);

            auto y1 = b, y2 = b;
            var->axpy(0.37, a.data(), y1.data(), n);
            ref.axpy(0.37, a.data(), y2.data(), n);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-15);

            auto x1 = a, z1 = b, x2 = a, z2 = b;
            const double c = std::cos(0.3), s = std::sin(0.3);
            var->rotate(x1.data(), z1.data(), n, c, s);
            ref.rotate(x2.data(), z2.data(), n, c, s);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(std::abs(x1[i] - x2[i]) <= 1e-15);
                CHECK(std::abs(z1[i] - z2[i]) <= 1e-15);
            }
        }
    }
}

TEST_CASE("unaligned tails are handled") {
    // Offsets into a larger buffer exercise unaligned loads and every tail length.
    const auto big = random_vec(80, 5);
    const auto other = random_vec(80, 6);
    const auto& ref = simd::scalar_kernels();
    for (const auto* var : compiled_variants())
        for (std::size_t off = 0; off < 4; ++off)
            for (std::size_t n = 1; n < 20; ++n)
                CHECK(std::abs(var->dot(big.data() + off, other.data() + off, n) -
                               ref.dot(big.data() + off, other.data() + off, n)) <= 1e-13 * 20);
}

TEST_CASE("force_isa pins and restores the active table") {
    simd::force_isa(simd::Isa::scalar);
    CHECK(simd::active().isa == simd::Isa::scalar);
    simd::force_isa(std::nullopt);
    const auto isa = simd::active().isa;
    CHECK(simd::kernels_for(isa).has_value());
}
