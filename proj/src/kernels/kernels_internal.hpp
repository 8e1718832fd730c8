#pragma once

#include "ragbench/kernels/distance.hpp"

namespace ragbench::kernels::detail {

inline constexpr std::size_t kLanes = 4;

inline double reduce_lanes(const double* lane) noexcept { return (lane[0] + lane[1]) + (lane[2] + lane[3]); }

#if defined(RAGBENCH_HAVE_AVX2)
extern const DistanceKernels avx2_table;
#endif
#if defined(RAGBENCH_HAVE_NEON)
extern const DistanceKernels neon_table;
#endif

} // namespace ragbench::kernels::detail
