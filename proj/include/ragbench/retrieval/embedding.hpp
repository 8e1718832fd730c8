#pragma once

#include "ragbench/corpus/snippet_store.hpp"
#include "ragbench/http.hpp"
#include "ragbench/retrieval/vector_index.hpp"
#include "ragbench/retry.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace ragbench::retrieval {

/// Dual-encoder side: questions use the query encoder, snippets the passage encoder.
enum class EmbedMode { query, passage };

std::string_view embed_mode_name(EmbedMode mode) noexcept;

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;

    virtual const std::string& id() const noexcept = 0;
    virtual std::size_t dim() const noexcept = 0;

    /// One vector of dim() floats per text. Throws UserError for an empty
    /// batch and RetriableError/BackendError for provider failures.
    virtual std::vector<std::vector<float>> embed(std::span<const std::string> texts, EmbedMode mode) = 0;
};

/// Deterministic feature-hashing provider for tests and offline runs. Each
/// token maps to a seeded pseudo-random +/-1 direction; a text embeds to the
/// L2-normalized sum of its token directions. With `asymmetric` set, query
/// and passage modes use different hash seeds.
class HashProjectionProvider final : public EmbeddingProvider {
public:
    HashProjectionProvider(std::string id, std::size_t dim, std::uint64_t seed = 0, bool asymmetric = false);

    const std::string& id() const noexcept override { return id_; }
    std::size_t dim() const noexcept override { return dim_; }
    std::vector<std::vector<float>> embed(std::span<const std::string> texts, EmbedMode mode) override;

    std::vector<float> embed_one(std::string_view text, EmbedMode mode) const;

private:
    std::string id_;
    std::size_t dim_;
    std::uint64_t seed_;
    bool asymmetric_;
};

/// Remote provider: POST {"texts": [...], "mode": "query"|"passage"} and
/// expect {"vectors": [[...], ...]}.
class HttpEmbeddingProvider final : public EmbeddingProvider {
public:
    HttpEmbeddingProvider(std::string id, std::string url, std::size_t dim, RetryPolicy retry = {},
                          std::chrono::seconds timeout = std::chrono::seconds(60));

    const std::string& id() const noexcept override { return id_; }
    std::size_t dim() const noexcept override { return dim_; }
    std::vector<std::vector<float>> embed(std::span<const std::string> texts, EmbedMode mode) override;

private:
    std::string id_;
    HttpEndpoint endpoint_;
    std::size_t dim_;
    RetryPolicy retry_;
    std::chrono::seconds timeout_;
};

/// Named providers from a config object
///   {"<id>": {"kind": "hash", "dim": 64, "seed": 1, "asymmetric": false},
///    "<id>": {"kind": "http", "url": "...", "dim": 768}}
/// plus built-in ids of the form "hash-<dim>[-s<seed>][-asym]".
class ProviderRegistry {
public:
    ProviderRegistry() = default;
    explicit ProviderRegistry(const nlohmann::json& config);

    /// Throws UserError for an unknown id.
    std::shared_ptr<EmbeddingProvider> get(const std::string& id);

    void add(std::shared_ptr<EmbeddingProvider> provider);

private:
    std::mutex mutex_;
    nlohmann::json config_ = nlohmann::json::object();
    std::map<std::string, std::shared_ptr<EmbeddingProvider>> providers_;
};

/// Text embedded for a snippet on the passage side.
std::string passage_text(const corpus::Snippet& snippet);

/// Embeds every snippet (passage mode, in batches) into a flat index.
VectorIndex build_vector_index(const corpus::SnippetStore& store, EmbeddingProvider& provider, Metric metric,
                               std::size_t batch_size = 64);

} // namespace ragbench::retrieval
