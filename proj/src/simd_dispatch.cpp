#include <atomic>
#include <cstdlib>
#include <string_view>

#include "simd_kernels.hpp"

namespace nlfp::simd {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(NLFP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* initial_table() noexcept {
    const KernelTable* best = avx2_kernels();
    if (const char* env = std::getenv("NLFP_SIMD")) {
        const std::string_view want(env);
        if (want == "scalar") return &detail::kScalarTable;
        if (want == "avx2" && best) return best;
    }
    return best ? best : &detail::kScalarTable;
}

std::atomic<const KernelTable*>& active() noexcept {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

}  // namespace

const KernelTable& scalar_kernels() noexcept { return detail::kScalarTable; }

const KernelTable* avx2_kernels() noexcept {
#if defined(NLFP_HAVE_AVX2)
    static const bool ok = cpu_has_avx2();
    return ok ? &detail::kAvx2Table : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& kernels() noexcept { return *active().load(std::memory_order_relaxed); }

bool select(Isa isa) noexcept {
    const KernelTable* table = isa == Isa::Scalar ? &detail::kScalarTable : avx2_kernels();
    if (!table) return false;
    active().store(table, std::memory_order_relaxed);
    return true;
}

Isa best_available() noexcept { return avx2_kernels() ? Isa::Avx2 : Isa::Scalar; }

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

}  // namespace nlfp::simd
