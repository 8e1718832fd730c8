#include "ragbench/retrieval/embedding.hpp"

#include "ragbench/error.hpp"
#include "ragbench/retrieval/tokenizer.hpp"

#include <cmath>
#include <regex>

namespace ragbench::retrieval {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

constexpr std::uint64_t kQuerySalt = 0x51ED270B27A1E3C5ull;

} // namespace

std::string_view embed_mode_name(EmbedMode mode) noexcept { return mode == EmbedMode::query ? "query" : "passage"; }

HashProjectionProvider::HashProjectionProvider(std::string id, std::size_t dim, std::uint64_t seed, bool asymmetric)
    : id_(std::move(id)), dim_(dim), seed_(seed), asymmetric_(asymmetric) {
    if (dim_ == 0) throw UserError("embedding dimension must be positive");
}

std::vector<float> HashProjectionProvider::embed_one(std::string_view text, EmbedMode mode) const {
    const std::uint64_t salt = asymmetric_ && mode == EmbedMode::query ? kQuerySalt : 0;
    std::vector<double> acc(dim_, 0.0);
    for (const auto& token : tokenize(text)) {
        std::uint64_t state = fnv1a(token) ^ seed_ ^ salt;
        for (std::size_t j = 0; j < dim_; j += 64) {
            const std::uint64_t bits = splitmix64(state);
            for (std::size_t b = 0; b < 64 && j + b < dim_; ++b) acc[j + b] += ((bits >> b) & 1u) ? 1.0 : -1.0;
        }
    }
    double norm = 0.0;
    for (double v : acc) norm += v * v;
    norm = std::sqrt(norm);
    std::vector<float> out(dim_, 0.0f);
    if (norm > 0.0) {
        for (std::size_t j = 0; j < dim_; ++j) out[j] = static_cast<float>(acc[j] / norm);
    }
    return out;
}

std::vector<std::vector<float>> HashProjectionProvider::embed(std::span<const std::string> texts, EmbedMode mode) {
    if (texts.empty()) throw UserError("embed called with no texts");
    std::vector<std::vector<float>> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(embed_one(t, mode));
    return out;
}

HttpEmbeddingProvider::HttpEmbeddingProvider(std::string id, std::string url, std::size_t dim, RetryPolicy retry,
                                             std::chrono::seconds timeout)
    : id_(std::move(id)), endpoint_(HttpEndpoint::parse(url)), dim_(dim), retry_(std::move(retry)), timeout_(timeout) {
    if (dim_ == 0) throw UserError("embedding provider " + id_ + " needs a positive dim");
}

std::vector<std::vector<float>> HttpEmbeddingProvider::embed(std::span<const std::string> texts, EmbedMode mode) {
    if (texts.empty()) throw UserError("embed called with no texts");
    const nlohmann::json request{{"texts", texts}, {"mode", embed_mode_name(mode)}};
    const std::string body = request.dump();
    return call_with_retries(retry_, [&] {
        const std::string response = post_json(endpoint_, body, {}, timeout_);
        std::vector<std::vector<float>> vectors;
        try {
            vectors = nlohmann::json::parse(response).at("vectors").get<std::vector<std::vector<float>>>();
        } catch (const nlohmann::json::exception& e) {
            throw RetriableError("provider " + id_ + " returned malformed JSON", 0, e.what());
        }
        if (vectors.size() != texts.size()) {
            throw BackendError("provider " + id_ + " returned " + std::to_string(vectors.size()) + " vectors for " +
                               std::to_string(texts.size()) + " texts");
        }
        for (const auto& v : vectors) {
            if (v.size() != dim_) {
                throw BackendError("provider " + id_ + " returned dim " + std::to_string(v.size()) + ", expected " +
                                   std::to_string(dim_));
            }
        }
        return vectors;
    });
}

ProviderRegistry::ProviderRegistry(const nlohmann::json& config) {
    if (!config.is_null()) {
        if (!config.is_object()) throw UserError("\"providers\" must be an object");
        config_ = config;
    }
}

void ProviderRegistry::add(std::shared_ptr<EmbeddingProvider> provider) {
    std::lock_guard lock(mutex_);
    providers_[provider->id()] = std::move(provider);
}

std::shared_ptr<EmbeddingProvider> ProviderRegistry::get(const std::string& id) {
    std::lock_guard lock(mutex_);
    if (auto it = providers_.find(id); it != providers_.end()) return it->second;

    std::shared_ptr<EmbeddingProvider> provider;
    if (config_.contains(id)) {
        try {
            const auto& c = config_.at(id);
            const auto kind = c.value("kind", std::string{"hash"});
            if (kind == "hash") {
                provider = std::make_shared<HashProjectionProvider>(id, c.at("dim").get<std::size_t>(),
                                                                    c.value("seed", std::uint64_t{0}),
                                                                    c.value("asymmetric", false));
            } else if (kind == "http") {
                RetryPolicy retry;
                retry.max_retries = c.value("max_retries", retry.max_retries);
                provider = std::make_shared<HttpEmbeddingProvider>(id, c.at("url").get<std::string>(),
                                                                   c.at("dim").get<std::size_t>(), retry);
            } else {
                throw UserError("provider " + id + ": unknown kind " + kind);
            }
        } catch (const nlohmann::json::exception& e) {
            throw UserError("provider " + id + ": " + e.what());
        }
    } else {
        static const std::regex builtin(R"(hash-(\d+)(?:-s(\d+))?(-asym)?)");
        std::smatch m;
        if (!std::regex_match(id, m, builtin)) throw UserError("unknown embedding provider: " + id);
        provider = std::make_shared<HashProjectionProvider>(id, std::stoul(m[1].str()),
                                                            m[2].matched ? std::stoull(m[2].str()) : 0,
                                                            m[3].matched);
    }
    providers_[id] = provider;
    return provider;
}

std::string passage_text(const corpus::Snippet& snippet) {
    if (snippet.title.empty()) return snippet.content;
    return snippet.title + "\n" + snippet.content;
}

VectorIndex build_vector_index(const corpus::SnippetStore& store, EmbeddingProvider& provider, Metric metric,
                               std::size_t batch_size) {
    if (store.empty()) throw UserError("cannot build a vector index over an empty store");
    VectorIndex index(provider.id(), metric, provider.dim());
    batch_size = std::max<std::size_t>(batch_size, 1);
    std::vector<std::string> batch;
    for (std::size_t start = 0; start < store.size(); start += batch_size) {
        const std::size_t end = std::min(store.size(), start + batch_size);
        batch.clear();
        for (std::size_t i = start; i < end; ++i) batch.push_back(passage_text(store[i]));
        const auto vectors = provider.embed(batch, EmbedMode::passage);
        for (std::size_t i = start; i < end; ++i) index.add(store[i].id, vectors[i - start]);
    }
    return index;
}

} // namespace ragbench::retrieval
