#include "kernels_internal.hpp"

namespace ragbench::kernels {
namespace {

using detail::kLanes;

void dot_scalar(const float* rows, std::size_t n_rows, std::size_t dim, const float* query, double* out) {
    for (std::size_t r = 0; r < n_rows; ++r) {
        const float* row = rows + r * dim;
        double lane[kLanes] = {0.0, 0.0, 0.0, 0.0};
        for (std::size_t i = 0; i < dim; ++i) {
            const double p = static_cast<double>(row[i]) * static_cast<double>(query[i]);
            lane[i % kLanes] += p;
        }
        out[r] = detail::reduce_lanes(lane);
    }
}

void l2_squared_scalar(const float* rows, std::size_t n_rows, std::size_t dim, const float* query, double* out) {
    for (std::size_t r = 0; r < n_rows; ++r) {
        const float* row = rows + r * dim;
        double lane[kLanes] = {0.0, 0.0, 0.0, 0.0};
        for (std::size_t i = 0; i < dim; ++i) {
            const double d = static_cast<double>(row[i]) - static_cast<double>(query[i]);
            const double sq = d * d;
            lane[i % kLanes] += sq;
        }
        out[r] = detail::reduce_lanes(lane);
    }
}

constexpr DistanceKernels kScalar{Isa::scalar, &dot_scalar, &l2_squared_scalar};

} // namespace

const DistanceKernels& scalar_kernels() noexcept { return kScalar; }

} // namespace ragbench::kernels
