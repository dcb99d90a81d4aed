#include "kernels_impl.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace divscore::simd {

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    }
    return "unknown";
}

const KernelTable& scalar_kernels() noexcept { return detail::scalar_table; }

std::optional<const KernelTable*> kernels_for(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar:
        return &detail::scalar_table;
    case Isa::avx2:
#if defined(DIVSCORE_HAVE_AVX2)
        __builtin_cpu_init();
        if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
            return &detail::avx2_table;
        }
#endif
        return std::nullopt;
    case Isa::neon:
#if defined(DIVSCORE_HAVE_NEON)
        return &detail::neon_table;
#else
        return std::nullopt;
#endif
    }
    return std::nullopt;
}

namespace {

const KernelTable* detect() noexcept {
    if (const char* env = std::getenv("DIVSCORE_SIMD"); env != nullptr && std::string(env) == "scalar") {
        return &detail::scalar_table;
    }
    for (Isa isa : {Isa::avx2, Isa::neon}) {
        if (auto table = kernels_for(isa)) return *table;
    }
    return &detail::scalar_table;
}

std::atomic<const KernelTable*> g_forced{nullptr};

} // namespace

const KernelTable& active() noexcept {
    if (const KernelTable* forced = g_forced.load(std::memory_order_acquire)) return *forced;
    static const KernelTable* const detected = detect();
    return *detected;
}

void force_isa(std::optional<Isa> isa) {
    if (!isa) {
        g_forced.store(nullptr, std::memory_order_release);
        return;
    }
    auto table = kernels_for(*isa);
    g_forced.store(table ? *table : &detail::scalar_table, std::memory_order_release);
}

} // namespace divscore::simd
