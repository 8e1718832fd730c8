#include "kernels_internal.hpp"

#include <cstdlib>
#include <string_view>

namespace ragbench::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(RAGBENCH_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

bool force_scalar() noexcept {
    const char* v = std::getenv("RAGBENCH_FORCE_SCALAR");
    return v != nullptr && std::string_view(v) != "" && std::string_view(v) != "0";
}

const DistanceKernels& select_kernels() noexcept {
    if (!force_scalar()) {
        if (const auto* k = kernels_for(Isa::avx2)) return *k;
        if (const auto* k = kernels_for(Isa::neon)) return *k;
    }
    return scalar_kernels();
}

} // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    }
    return "unknown";
}

const DistanceKernels* kernels_for(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar:
        return &scalar_kernels();
    case Isa::avx2:
#if defined(RAGBENCH_HAVE_AVX2)
        if (cpu_has_avx2()) return &detail::avx2_table;
#endif
        return nullptr;
    case Isa::neon:
#if defined(RAGBENCH_HAVE_NEON)
        return &detail::neon_table; // Advanced SIMD is mandatory on AArch64.
#else
        return nullptr;
#endif
    }
    return nullptr;
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
        if (kernels_for(isa) != nullptr) out.push_back(isa);
    }
    return out;
}

const DistanceKernels& active_kernels() noexcept {
    static const DistanceKernels& chosen = select_kernels();
    return chosen;
}

} // namespace ragbench::kernels
