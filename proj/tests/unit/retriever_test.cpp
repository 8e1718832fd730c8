#include "ragbench/error.hpp"
#include "ragbench/retrieval/retriever.hpp"

#include "oracles.hpp"
#include "toy_corpus.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ragbench;
using namespace ragbench::retrieval;

namespace {

std::shared_ptr<EmbeddingProvider> hash_provider(std::size_t dim) {
    return std::make_shared<HashProjectionProvider>("hash-" + std::to_string(dim), dim);
}

IndexSet full_set(const corpus::SnippetStore& store, std::shared_ptr<EmbeddingProvider> provider) {
    IndexSet set(store);
    set.set_lexical(LexicalIndex::build(store));
    set.add_dense(build_vector_index(store, *provider, Metric::inner_product), provider);
    return set;
}

} // namespace

TEST(RetrieverSpec, Ids) {
    EXPECT_EQ(RetrieverSpec::lexical().id(), "bm25");
    EXPECT_EQ(RetrieverSpec::dense("medcpt", Metric::inner_product).id(), "dense:medcpt:ip");
    const auto f = RetrieverSpec::fusion({RetrieverSpec::dense("medcpt", Metric::l2), RetrieverSpec::lexical()});
    EXPECT_EQ(f.id(), "rrf(bm25,dense:medcpt:l2)");
}

TEST(RetrieverSpec, JsonRoundTrip) {
    const auto j = nlohmann::json::parse(
        R"({"kind": "fusion", "rrf_k": 30, "children": ["bm25", {"kind": "dense", "provider": "hash-8"}]})");
    const auto spec = RetrieverSpec::from_json(j);
    EXPECT_EQ(spec.rrf_k, 30.0);
    ASSERT_EQ(spec.children.size(), 2u);
    EXPECT_EQ(spec.children[1].metric, Metric::inner_product);
    const auto again = RetrieverSpec::from_json(nlohmann::json::parse(spec.to_json().dump()));
    EXPECT_EQ(again.id(), spec.id());
    EXPECT_TRUE(spec.needs_lexical());
    EXPECT_EQ(spec.dense_requirements().size(), 1u);
}

TEST(RetrieverSpec, Validation) {
    EXPECT_THROW(RetrieverSpec::fusion({RetrieverSpec::lexical()}).validate(), UserError);
    EXPECT_THROW(RetrieverSpec::fusion({RetrieverSpec::lexical(), RetrieverSpec::lexical()}).validate(), UserError);
    auto f = RetrieverSpec::fusion({RetrieverSpec::lexical(), RetrieverSpec::dense("p", Metric::l2)});
    f.rrf_k = 0;
    EXPECT_THROW(f.validate(), UserError);
    EXPECT_THROW(RetrieverSpec::from_json("splade"), UserError);
    EXPECT_THROW(RetrieverSpec::from_json(nlohmann::json{{"kind", "colbert"}}), UserError);
}

TEST(Retrieve, LexicalDelegates) {
    std::mt19937_64 rng(1);
    const auto store = testkit::random_store(rng, 80, 30);
    IndexSet set(store);
    set.set_lexical(LexicalIndex::build(store));
    const auto got = retrieve_ranking("w1 w2 w3", set, RetrieverSpec::lexical(), 10);
    EXPECT_EQ(got, set.lexical()->search("w1 w2 w3", 10));
    const auto resolved = retrieve("w1 w2 w3", set, RetrieverSpec::lexical(), 10);
    ASSERT_EQ(resolved.size(), got.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(resolved[i].snippet->id, got.entries[i].snippet_id);
}

TEST(Retrieve, MissingIndexNamesRetriever) {
    std::mt19937_64 rng(1);
    const auto store = testkit::random_store(rng, 10, 30);
    IndexSet set(store);
    try {
        retrieve_ranking("w1", set, RetrieverSpec::dense("hash-8", Metric::l2), 3);
        FAIL();
    } catch (const UserError& e) {
        EXPECT_NE(std::string(e.what()).find("dense:hash-8:l2"), std::string::npos);
    }
    EXPECT_THROW(set.require(RetrieverSpec::lexical()), UserError);
}

TEST(Retrieve, IndexMustCoverStore) {
    std::mt19937_64 rng(1);
    const auto store = testkit::random_store(rng, 10, 30);
    const auto other = testkit::random_store(rng, 11, 30);
    IndexSet set(store);
    EXPECT_THROW(set.set_lexical(LexicalIndex::build(other)), UserError);
    auto p = hash_provider(8);
    EXPECT_THROW(set.add_dense(build_vector_index(other, *p, Metric::l2), p), UserError);
    auto wrong = hash_provider(4);
    EXPECT_THROW(set.add_dense(build_vector_index(store, *p, Metric::l2), wrong), UserError);
}

TEST(Retrieve, FusionUsesDoublePoolPerChild) {
    std::mt19937_64 rng(4);
    const auto store = testkit::random_store(rng, 200, 25);
    auto p = hash_provider(16);
    const auto set = full_set(store, p);
    const auto spec = RetrieverSpec::fusion({RetrieverSpec::lexical(), RetrieverSpec::dense(p->id(), Metric::inner_product)});
    for (std::size_t k : {1u, 5u, 32u}) {
        const std::string q = "w3 w7 w11 w2";
        const std::vector<Ranking> children{retrieve_ranking(q, set, spec.children[0], 2 * k),
                                            retrieve_ranking(q, set, spec.children[1], 2 * k)};
        EXPECT_EQ(retrieve_ranking(q, set, spec, k), rrf_fuse(children, 60.0, k));
        EXPECT_EQ(fusion_pool_size(k), 2 * k);
    }
}

TEST(Retrieve, FusionOfIdenticalChildrenKeepsOrder) {
    std::mt19937_64 rng(8);
    const auto store = testkit::random_store(rng, 100, 25);
    auto p1 = std::make_shared<HashProjectionProvider>("h1", 16, 3);
    auto p2 = std::make_shared<HashProjectionProvider>("h2", 16, 3);
    IndexSet set(store);
    set.add_dense(build_vector_index(store, *p1, Metric::inner_product), p1);
    set.add_dense(build_vector_index(store, *p2, Metric::inner_product), p2);
    const auto spec = RetrieverSpec::fusion(
        {RetrieverSpec::dense("h1", Metric::inner_product), RetrieverSpec::dense("h2", Metric::inner_product)});
    const std::string q = "w1 w5 w9";
    const auto child = retrieve_ranking(q, set, spec.children[0], 10);
    EXPECT_EQ(retrieve_ranking(q, set, spec, 10).ids(), child.ids());
}

TEST(Retrieve, PlantedGoldRanksFirst) {
    std::mt19937_64 rng(12);
    auto store = testkit::random_store(rng, 300, 60);
    store.add({"rnd:gold:0", "rnd", "", "zeta1 zeta2 zeta3 zeta4 zeta5 w1 w2"});
    IndexSet set(store);
    set.set_lexical(LexicalIndex::build(store));
    const std::string q = "which w1 zeta1 zeta2 zeta3 zeta4 zeta5 w3";
    const auto got = retrieve_ranking(q, set, RetrieverSpec::lexical(), 5);
    ASSERT_FALSE(got.empty());
    EXPECT_EQ(got.entries[0].snippet_id, "rnd:gold:0");
    EXPECT_EQ(testkit::oracle_bm25_search(store, q, 1)[0].id, "rnd:gold:0");
}

// The query is the question text, so retrieval is a function of the question
// alone; options and answers never reach it.
TEST(Retrieve, QuestionOnlyInvariance) {
    std::mt19937_64 rng(21);
    const auto store = testkit::random_store(rng, 150, 40);
    auto p = hash_provider(16);
    const auto set = full_set(store, p);
    const auto spec = RetrieverSpec::fusion({RetrieverSpec::lexical(), RetrieverSpec::dense(p->id(), Metric::inner_product)});
    auto task = testkit::random_task(rng, 30, 40);
    for (auto& item : task.items) {
        const auto before = retrieve_ranking(item.question, set, spec, 8);
        item.options["A"] = "w1 w2 w3 w4";
        item.options.erase("D");
        item.answer = "B";
        EXPECT_EQ(retrieve_ranking(item.question, set, spec, 8), before);
    }
}
