#include "kernels_internal.hpp"

#include <immintrin.h>

namespace ragbench::kernels {
namespace {

using detail::kLanes;

// Four floats widen to one __m256d; lane j of the accumulator holds the
// elements with index % 4 == j, matching the scalar reference.

void dot_avx2(const float* rows, std::size_t n_rows, std::size_t dim, const float* query, double* out) {
    const std::size_t body = dim - dim % kLanes;
    for (std::size_t r = 0; r < n_rows; ++r) {
        const float* row = rows + r * dim;
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t i = 0; i < body; i += kLanes) {
            const __m256d a = _mm256_cvtps_pd(_mm_loadu_ps(row + i));
            const __m256d b = _mm256_cvtps_pd(_mm_loadu_ps(query + i));
            acc = _mm256_add_pd(acc, _mm256_mul_pd(a, b));
        }
        alignas(32) double lane[kLanes];
        _mm256_store_pd(lane, acc);
        for (std::size_t i = body; i < dim; ++i) {
            const double p = static_cast<double>(row[i]) * static_cast<double>(query[i]);
            lane[i % kLanes] += p;
        }
        out[r] = detail::reduce_lanes(lane);
    }
}

void l2_squared_avx2(const float* rows, std::size_t n_rows, std::size_t dim, const float* query, double* out) {
    const std::size_t body = dim - dim % kLanes;
    for (std::size_t r = 0; r < n_rows; ++r) {
        const float* row = rows + r * dim;
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t i = 0; i < body; i += kLanes) {
            const __m256d d = _mm256_sub_pd(_mm256_cvtps_pd(_mm_loadu_ps(row + i)),
                                            _mm256_cvtps_pd(_mm_loadu_ps(query + i)));
            acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
        }
        alignas(32) double lane[kLanes];
        _mm256_store_pd(lane, acc);
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
const DistanceKernels avx2_table{Isa::avx2, &dot_avx2, &l2_squared_avx2};
} // namespace detail

} // namespace ragbench::kernels
