#include "kernels_internal.hpp"

#include <arm_neon.h>

namespace ragbench::kernels {
namespace {

using detail::kLanes;

// Two float64x2 accumulators hold lanes {0,1} and {2,3}. Multiply and add
// stay separate intrinsics (this file builds with -ffp-contract=off) so the
// rounding matches the scalar reference.

void dot_neon(const float* rows, std::size_t n_rows, std::size_t dim, const float* query, double* out) {
    const std::size_t body = dim - dim % kLanes;
    for (std::size_t r = 0; r < n_rows; ++r) {
        const float* row = rows + r * dim;
        float64x2_t lo = vdupq_n_f64(0.0);
        float64x2_t hi = vdupq_n_f64(0.0);
        for (std::size_t i = 0; i < body; i += kLanes) {
            const float32x4_t a = vld1q_f32(row + i);
            const float32x4_t b = vld1q_f32(query + i);
            lo = vaddq_f64(lo, vmulq_f64(vcvt_f64_f32(vget_low_f32(a)), vcvt_f64_f32(vget_low_f32(b))));
            hi = vaddq_f64(hi, vmulq_f64(vcvt_high_f64_f32(a), vcvt_high_f64_f32(b)));
        }
        double lane[kLanes];
        vst1q_f64(lane, lo);
        vst1q_f64(lane + 2, hi);
        for (std::size_t i = body; i < dim; ++i) {
            const double p = static_cast<double>(row[i]) * static_cast<double>(query[i]);
            lane[i % kLanes] += p;
        }
        out[r] = detail::reduce_lanes(lane);
    }
}

void l2_squared_neon(const float* rows, std::size_t n_rows, std::size_t dim, const float* query, double* out) {
    const std::size_t body = dim - dim % kLanes;
    for (std::size_t r = 0; r < n_rows; ++r) {
        const float* row = rows + r * dim;
        float64x2_t lo = vdupq_n_f64(0.0);
        float64x2_t hi = vdupq_n_f64(0.0);
        for (std::size_t i = 0; i < body; i += kLanes) {
            const float32x4_t a = vld1q_f32(row + i);
            const float32x4_t b = vld1q_f32(query + i);
            const float64x2_t dlo = vsubq_f64(vcvt_f64_f32(vget_low_f32(a)), vcvt_f64_f32(vget_low_f32(b)));
            const float64x2_t dhi = vsubq_f64(vcvt_high_f64_f32(a), vcvt_high_f64_f32(b));
            lo = vaddq_f64(lo, vmulq_f64(dlo, dlo));
            hi = vaddq_f64(hi, vmulq_f64(dhi, dhi));
        }
        double lane[kLanes];
        vst1q_f64(lane, lo);
        vst1q_f64(lane + 2, hi);
        for (std::size_t i = body; i < dim; ++i) {
            const double d = static_cast<double>(row[i]) - static_cast<double>(query[i]);
            const double sq = d * d;
            lane[i % kLanes] += sq;
        }
        out[r] = detail::reduce_lanes(lane);
    }
}

} // namespace

namespace detail {
const DistanceKernels neon_table{Isa::neon, &dot_neon, &l2_squared_neon};
} // namespace detail

} // namespace ragbench::kernels
