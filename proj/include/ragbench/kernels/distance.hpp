#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace ragbench::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

/// Scores `n_rows` row-major float vectors of length `dim` against `query`,
/// writing one double per row into `out`.
///
/// Every variant accumulates in double over four interleaved lanes (element i
/// goes to lane i % 4) and reduces as (l0 + l1) + (l2 + l3), without fused
/// multiply-add, so all variants produce bit-identical results.
using BatchKernel = void (*)(const float* rows, std::size_t n_rows, std::size_t dim, const float* query,
                             double* out);

struct DistanceKernels {
    Isa isa;
    BatchKernel dot;        // inner product
    BatchKernel l2_squared; // squared Euclidean distance
};

/// Portable reference implementation.
const DistanceKernels& scalar_kernels() noexcept;

/// The kernels for `isa`, or nullptr when not compiled in or not supported
/// by the running CPU.
const DistanceKernels* kernels_for(Isa isa) noexcept;

/// Every ISA usable on this machine, scalar first.
std::vector<Isa> available_isas();

/// Best available kernels, chosen once at first use. Setting the environment
/// variable RAGBENCH_FORCE_SCALAR=1 pins the scalar reference.
const DistanceKernels& active_kernels() noexcept;

} // namespace ragbench::kernels
