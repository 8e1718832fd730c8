#include "ragbench/kernels/distance.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <random>

using namespace ragbench::kernels;

namespace {

std::vector<float> random_floats(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<float> u(-4.0f, 4.0f);
    std::vector<float> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

// Lane-interleaved reference written out longhand.
double lane_dot(const float* a, const float* b, std::size_t dim) {
    double l[4] = {0, 0, 0, 0};
    for (std::size_t i = 0; i < dim; ++i) l[i % 4] += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    return (l[0] + l[1]) + (l[2] + l[3]);
}

} // namespace

TEST(Kernels, ScalarMatchesLaneReference) {
    std::mt19937_64 rng(1);
    for (std::size_t dim : {1u, 3u, 4u, 7u, 8u, 17u, 64u, 129u}) {
        const auto rows = random_floats(rng, dim * 5);
        const auto q = random_floats(rng, dim);
        std::vector<double> out(5);
        scalar_kernels().dot(rows.data(), 5, dim, q.data(), out.data());
        for (std::size_t r = 0; r < 5; ++r) EXPECT_EQ(out[r], lane_dot(rows.data() + r * dim, q.data(), dim));
    }
}

TEST(Kernels, L2SquaredSmallCase) {
    const float rows[] = {1, 0, 0, 0, 1, 0};
    const float q[] = {1, 0, 0};
    double out[2];
    scalar_kernels().l2_squared(rows, 2, 3, q, out);
    EXPECT_EQ(out[0], 0.0);
    EXPECT_EQ(out[1], 2.0);
}

// Every compiled-in variant the CPU supports must agree bit for bit with the
// scalar reference, including awkward dimensions and tails.
TEST(Kernels, SimdVariantsBitIdenticalToScalar) {
    const auto isas = available_isas();
    ASSERT_FALSE(isas.empty());
    EXPECT_EQ(isas.front(), Isa::scalar);
    std::mt19937_64 rng(2);
    for (const Isa isa : isas) {
        const auto* k = kernels_for(isa);
        ASSERT_NE(k, nullptr) << isa_name(isa);
        for (std::size_t dim = 1; dim <= 70; ++dim) {
            const std::size_t n = 1 + dim % 9;
            const auto rows = random_floats(rng, dim * n);
            const auto q = random_floats(rng, dim);
            std::vector<double> ref(n), got(n);
            scalar_kernels().dot(rows.data(), n, dim, q.data(), ref.data());
            k->dot(rows.data(), n, dim, q.data(), got.data());
            for (std::size_t r = 0; r < n; ++r) {
                ASSERT_EQ(std::bit_cast<std::uint64_t>(got[r]), std::bit_cast<std::uint64_t>(ref[r]))
                    << isa_name(isa) << " dot dim " << dim;
            }
            scalar_kernels().l2_squared(rows.data(), n, dim, q.data(), ref.data());
            k->l2_squared(rows.data(), n, dim, q.data(), got.data());
            for (std::size_t r = 0; r < n; ++r) {
                ASSERT_EQ(std::bit_cast<std::uint64_t>(got[r]), std::bit_cast<std::uint64_t>(ref[r]))
                    << isa_name(isa) << " l2 dim " << dim;
            }
        }
    }
}

TEST(Kernels, ActiveKernelsIsAvailable) {
    const auto& k = active_kernels();
    const auto isas = available_isas();
    EXPECT_NE(std::find(isas.begin(), isas.end(), k.isa), isas.end());
}
