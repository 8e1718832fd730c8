#include "ragbench/error.hpp"
#include "ragbench/retrieval/embedding.hpp"

#include "toy_corpus.hpp"

#include <gtest/gtest.h>
#include <httplib.h>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <thread>

using namespace ragbench;
using namespace ragbench::retrieval;

namespace {

double norm(const std::vector<float>& v) {
    double s = 0;
    for (float x : v) s += static_cast<double>(x) * x;
    return std::sqrt(s);
}

// Serves POST /embed on an ephemeral port. The first `fail_first` requests
// get a 503.
class EmbedServer {
public:
    explicit EmbedServer(int fail_first = 0, std::size_t dim = 3) : fail_left_(fail_first) {
        server_.Post("/embed", [this, dim](const httplib::Request& req, httplib::Response& res) {
            ++requests_;
            last_body_ = req.body;
            if (fail_left_ > 0) {
                --fail_left_;
                res.status = 503;
                res.set_content("busy", "text/plain");
                return;
            }
            const auto j = nlohmann::json::parse(req.body);
            nlohmann::json vectors = nlohmann::json::array();
            for (std::size_t i = 0; i < j.at("texts").size(); ++i) {
                std::vector<float> v(dim, 0.0f);
                v[i % dim] = j.at("mode") == "query" ? 1.0f : 2.0f;
                vectors.push_back(v);
            }
            res.set_content(nlohmann::json{{"vectors", vectors}}.dump(), "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~EmbedServer() {
        server_.stop();
        thread_.join();
    }
    std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/embed"; }
    int requests() const { return requests_; }
    std::string last_body() const { return last_body_; }

private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<int> fail_left_;
    std::atomic<int> requests_{0};
    std::string last_body_;
};

RetryPolicy no_sleep(int retries) {
    RetryPolicy p;
    p.max_retries = retries;
    p.sleep = nullptr;
    return p;
}

} // namespace

TEST(HashProvider, DeterministicAndNormalized) {
    HashProjectionProvider a("h", 32, 5), b("h", 32, 5);
    const auto va = a.embed_one("asthma inhaled corticosteroid", EmbedMode::passage);
    EXPECT_EQ(va, b.embed_one("asthma inhaled corticosteroid", EmbedMode::passage));
    EXPECT_EQ(va.size(), 32u);
    EXPECT_NEAR(norm(va), 1.0, 1e-6);
}

TEST(HashProvider, BatchGivesOneVectorPerText) {
    HashProjectionProvider p("h", 8);
    const std::vector<std::string> texts{"a", "b c", "d e f"};
    const auto out = p.embed(texts, EmbedMode::passage);
    ASSERT_EQ(out.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(out[i], p.embed_one(texts[i], EmbedMode::passage));
    EXPECT_THROW(p.embed({}, EmbedMode::query), UserError);
}

TEST(HashProvider, SeedChangesVectors) {
    HashProjectionProvider a("h", 16, 1), b("h", 16, 2);
    EXPECT_NE(a.embed_one("heart", EmbedMode::query), b.embed_one("heart", EmbedMode::query));
}

TEST(HashProvider, SymmetricModesAgreeAsymmetricDiffer) {
    HashProjectionProvider sym("h", 16, 3, false), asym("h", 16, 3, true);
    EXPECT_EQ(sym.embed_one("heart attack", EmbedMode::query), sym.embed_one("heart attack", EmbedMode::passage));
    EXPECT_NE(asym.embed_one("heart attack", EmbedMode::query), asym.embed_one("heart attack", EmbedMode::passage));
}

TEST(HashProvider, TextWithoutTokensIsZeroVector) {
    HashProjectionProvider p("h", 4);
    EXPECT_EQ(p.embed_one("", EmbedMode::query), std::vector<float>(4, 0.0f));
}

TEST(ProviderRegistry, BuiltinIds) {
    ProviderRegistry reg;
    auto p = reg.get("hash-24-s9-asym");
    EXPECT_EQ(p->dim(), 24u);
    EXPECT_EQ(p->id(), "hash-24-s9-asym");
    EXPECT_EQ(reg.get("hash-24-s9-asym"), p);
    HashProjectionProvider ref("hash-24-s9-asym", 24, 9, true);
    EXPECT_EQ(p->embed(std::vector<std::string>{"x y"}, EmbedMode::query)[0], ref.embed_one("x y", EmbedMode::query));
    EXPECT_THROW(reg.get("contriever"), UserError);
}

TEST(ProviderRegistry, ConfiguredProviders) {
    ProviderRegistry reg(nlohmann::json::parse(R"({"medcpt": {"kind": "hash", "dim": 12, "seed": 4},
                                                   "bad": {"kind": "neural"},
                                                   "nodim": {"kind": "hash"}})"));
    EXPECT_EQ(reg.get("medcpt")->dim(), 12u);
    EXPECT_THROW(reg.get("bad"), UserError);
    EXPECT_THROW(reg.get("nodim"), UserError);
    EXPECT_THROW(ProviderRegistry(nlohmann::json::array()), UserError);
}

TEST(BuildVectorIndex, CoversStoreInOrder) {
    std::mt19937_64 rng(3);
    const auto store = testkit::random_store(rng, 130, 40);
    HashProjectionProvider p("hash-8", 8);
    const auto idx = build_vector_index(store, p, Metric::inner_product, 7);
    ASSERT_EQ(idx.size(), store.size());
    for (std::size_t i = 0; i < store.size(); ++i) {
        EXPECT_EQ(idx.snippet_ids()[i], store[i].id);
        const auto want = p.embed_one(passage_text(store[i]), EmbedMode::passage);
        EXPECT_TRUE(std::equal(want.begin(), want.end(), idx.row(i).begin()));
    }
}

TEST(HttpEmbedding, WireFormat) {
    EmbedServer server;
    HttpEmbeddingProvider p("remote", server.url(), 3, no_sleep(0), std::chrono::seconds(5));
    const auto out = p.embed(std::vector<std::string>{"a", "b"}, EmbedMode::query);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0], (std::vector<float>{1, 0, 0}));
    EXPECT_EQ(out[1], (std::vector<float>{0, 1, 0}));
    const auto body = nlohmann::json::parse(server.last_body());
    EXPECT_EQ(body.at("mode"), "query");
    EXPECT_EQ(body.at("texts"), nlohmann::json::array({"a", "b"}));
}

TEST(HttpEmbedding, RetriesThenSucceeds) {
    EmbedServer server(2);
    std::vector<std::chrono::milliseconds> waits;
    RetryPolicy policy;
    policy.sleep = [&](std::chrono::milliseconds d) { waits.push_back(d); };
    HttpEmbeddingProvider p("remote", server.url(), 3, policy, std::chrono::seconds(5));
    const auto out = p.embed(std::vector<std::string>{"a"}, EmbedMode::passage);
    EXPECT_EQ(out[0], (std::vector<float>{2, 0, 0}));
    EXPECT_EQ(server.requests(), 3);
    EXPECT_EQ(waits, (std::vector<std::chrono::milliseconds>{std::chrono::milliseconds(1000),
                                                             std::chrono::milliseconds(4000)}));
}

TEST(HttpEmbedding, ExhaustionIsBackendErrorWithStatus) {
    EmbedServer server(10);
    HttpEmbeddingProvider p("remote", server.url(), 3, no_sleep(2), std::chrono::seconds(5));
    try {
        p.embed(std::vector<std::string>{"a"}, EmbedMode::query);
        FAIL() << "expected BackendError";
    } catch (const BackendError& e) {
        EXPECT_EQ(e.status(), 503);
    }
    EXPECT_EQ(server.requests(), 3);
}

TEST(HttpEmbedding, WrongDimensionRejected) {
    EmbedServer server(0, 2);
    HttpEmbeddingProvider p("remote", server.url(), 3, no_sleep(0), std::chrono::seconds(5));
    EXPECT_THROW(p.embed(std::vector<std::string>{"a"}, EmbedMode::query), BackendError);
}

TEST(HttpEmbedding, ConnectionRefusedIsRetriedThenFails) {
    int port = 0;
    {
        httplib::Server s;
        port = s.bind_to_any_port("127.0.0.1");
    }
    HttpEmbeddingProvider p("remote", "http://127.0.0.1:" + std::to_string(port) + "/embed", 3, no_sleep(1),
                            std::chrono::seconds(2));
    EXPECT_THROW(p.embed(std::vector<std::string>{"a"}, EmbedMode::query), BackendError);
}
