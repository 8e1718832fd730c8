#include "ragbench/error.hpp"
#include "ragbench/kernels/distance.hpp"
#include "ragbench/retrieval/ranking.hpp"
#include "ragbench/retrieval/vector_index.hpp"

#include "oracles.hpp"
#include "toy_corpus.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>

using namespace ragbench;
using namespace ragbench::retrieval;

namespace {

VectorIndex basis_index(Metric m) {
    VectorIndex idx("p", m, 2);
    const float e1[] = {1, 0}, e2[] = {0, 1};
    idx.add("s:e1:0", e1);
    idx.add("s:e2:0", e2);
    return idx;
}

} // namespace

TEST(VectorIndex, InnerProductBasis) {
    const auto idx = basis_index(Metric::inner_product);
    const float q[] = {1, 0};
    const auto r = idx.search(q, 1);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r.entries[0].snippet_id, "s:e1:0");
    EXPECT_EQ(r.entries[0].score, 1.0);
    EXPECT_EQ(r.retriever_id, "dense:p:ip");
}

TEST(VectorIndex, L2Basis) {
    const auto idx = basis_index(Metric::l2);
    const float q[] = {1, 0};
    const auto r = idx.search(q, 2);
    EXPECT_EQ(r.entries[0].snippet_id, "s:e1:0");
    EXPECT_EQ(r.entries[0].score, 0.0);
    EXPECT_DOUBLE_EQ(r.entries[1].score, std::sqrt(2.0));
    EXPECT_EQ(r.order, ScoreOrder::ascending);
    EXPECT_EQ(check_ranking(r), std::nullopt);
}

TEST(VectorIndex, DimensionMismatch) {
    auto idx = basis_index(Metric::inner_product);
    const float bad[] = {1, 0, 0};
    EXPECT_THROW(idx.search(bad, 1), UserError);
    EXPECT_THROW(idx.add("x", bad), UserError);
}

TEST(VectorIndex, ParseMetric) {
    EXPECT_EQ(parse_metric("ip"), Metric::inner_product);
    EXPECT_EQ(parse_metric("l2"), Metric::l2);
    EXPECT_THROW(parse_metric("cosine"), UserError);
}

TEST(VectorSearchProperty, MatchesExhaustiveScanOnEveryIsa) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> n(1, 200), d(1, 8), k(1, 40);
    std::uniform_real_distribution<float> u(-1.0f, 1.0f);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t rows_n = n(rng), dim = d(rng);
        std::vector<std::vector<float>> rows(rows_n, std::vector<float>(dim));
        std::vector<std::string> ids;
        for (std::size_t r = 0; r < rows_n; ++r) {
            for (auto& x : rows[r]) x = u(rng);
            ids.push_back("v:" + std::to_string(r) + ":0");
        }
        std::vector<float> q(dim);
        for (auto& x : q) x = u(rng);
        const std::size_t kk = k(rng);
        for (const Metric m : {Metric::inner_product, Metric::l2}) {
            VectorIndex idx("p", m, dim);
            for (std::size_t r = 0; r < rows_n; ++r) idx.add(ids[r], rows[r]);
            const auto want = testkit::oracle_vector_search(rows, ids, q, m, kk);
            for (const auto isa : kernels::available_isas()) {
                const auto got = idx.search(q, kk, *kernels::kernels_for(isa));
                ASSERT_EQ(check_ranking(got), std::nullopt);
                ASSERT_EQ(got.size(), want.size());
                for (std::size_t i = 0; i < want.size(); ++i) {
                    ASSERT_EQ(got.entries[i].snippet_id, want[i].id) << kernels::isa_name(isa);
                    ASSERT_NEAR(got.entries[i].score, want[i].score, 1e-9);
                }
            }
        }
    }
}

TEST(VectorCache, RoundTripAndLayout) {
    testkit::TempDir dir("vec");
    VectorIndex idx("hash-3", Metric::l2, 3);
    const float a[] = {1.5f, -2.0f, 0.25f}, b[] = {0, 1, 2};
    idx.add("s:a:0", a);
    idx.add("s:b:0", b);
    const auto stem = vector_cache_stem(dir.path(), "hash-3", Metric::l2);
    EXPECT_EQ(stem.filename().string(), "vectors.hash-3.l2");
    save_vector_cache(idx, stem);

    auto data = stem;
    data += ".f32";
    EXPECT_EQ(std::filesystem::file_size(data), 6 * sizeof(float));
    std::ifstream in(data, std::ios::binary);
    unsigned char first[4];
    in.read(reinterpret_cast<char*>(first), 4);
    EXPECT_EQ(first[3], 0x3f); // 1.5f = 0x3fc00000, little-endian
    EXPECT_EQ(first[2], 0xc0);

    const auto loaded = load_vector_cache(stem);
    EXPECT_EQ(loaded.dim(), 3u);
    EXPECT_EQ(loaded.metric(), Metric::l2);
    EXPECT_EQ(loaded.provider_id(), "hash-3");
    ASSERT_EQ(loaded.size(), 2u);
    EXPECT_EQ(loaded.snippet_ids()[1], "s:b:0");
    EXPECT_EQ(loaded.row(0)[0], 1.5f);
}

TEST(VectorCache, RejectsSizeMismatch) {
    testkit::TempDir dir("vec");
    VectorIndex idx("p", Metric::inner_product, 2);
    const float a[] = {1, 2};
    idx.add("x", a);
    const auto stem = dir.path() / "v";
    save_vector_cache(idx, stem);
    auto data = stem;
    data += ".f32";
    std::filesystem::resize_file(data, 4);
    EXPECT_THROW(load_vector_cache(stem), UserError);
}
