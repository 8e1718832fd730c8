#pragma once

#include "ragbench/corpus/snippet_store.hpp"
#include "ragbench/retrieval/embedding.hpp"
#include "ragbench/retrieval/fusion.hpp"
#include "ragbench/retrieval/lexical_index.hpp"
#include "ragbench/retrieval/vector_index.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ragbench::retrieval {

/// Which retriever to run: BM25, one dense index, or an RRF fusion of children.
struct RetrieverSpec {
    enum class Kind { lexical, dense, fusion };

    Kind kind = Kind::lexical;
    std::string provider_id;                // dense
    Metric metric = Metric::inner_product; // dense
    std::vector<RetrieverSpec> children;    // fusion
    double rrf_k = kDefaultRrfK;            // fusion

    static RetrieverSpec lexical();
    static RetrieverSpec dense(std::string provider_id, Metric metric);
    static RetrieverSpec fusion(std::vector<RetrieverSpec> children, double rrf_k = kDefaultRrfK);

    /// "bm25", "dense:<provider>:<metric>", or "rrf(<child ids>)".
    std::string id() const;

    /// Fusion needs >= 2 children with distinct ids and rrf_k > 0. Throws UserError.
    void validate() const;

    /// {"kind": "lexical"} | {"kind": "dense", "provider": "...", "metric": "ip"} |
    /// {"kind": "fusion", "rrf_k": 60, "children": [...]}; the string "bm25" is
    /// shorthand for the lexical retriever.
    static RetrieverSpec from_json(const nlohmann::json& j);
    nlohmann::ordered_json to_json() const;

    /// Every dense (provider, metric) pair the spec needs.
    std::vector<std::pair<std::string, Metric>> dense_requirements() const;
    bool needs_lexical() const;
};

/// Per-child pool size for fusion specs.
inline std::size_t fusion_pool_size(std::size_t k) noexcept { return 2 * k; }

/// The indexes built over one snippet store. Read-only after setup.
class IndexSet {
public:
    explicit IndexSet(const corpus::SnippetStore& store) : store_(&store) {}

    /// Throws UserError if the index does not cover the store.
    void set_lexical(LexicalIndex index);
    void add_dense(VectorIndex index, std::shared_ptr<EmbeddingProvider> provider);

    const corpus::SnippetStore& store() const noexcept { return *store_; }
    const LexicalIndex* lexical() const noexcept { return lexical_ ? &*lexical_ : nullptr; }

    struct Dense {
        VectorIndex index;
        std::shared_ptr<EmbeddingProvider> provider;
    };
    const Dense* dense(const std::string& provider_id, Metric metric) const;

    /// Throws UserError naming the first retriever whose index is missing.
    void require(const RetrieverSpec& spec) const;

private:
    const corpus::SnippetStore* store_;
    std::optional<LexicalIndex> lexical_;
    std::map<std::string, Dense> dense_;
};

/// Runs `spec` for the question text alone. Fusion children each retrieve
/// fusion_pool_size(k) before rrf_fuse truncates to k.
Ranking retrieve_ranking(std::string_view question, const IndexSet& indexes, const RetrieverSpec& spec, std::size_t k);

struct RetrievedSnippet {
    const corpus::Snippet* snippet;
    double score;
    std::size_t rank;
};

std::vector<RetrievedSnippet> retrieve(std::string_view question, const IndexSet& indexes, const RetrieverSpec& spec,
                                       std::size_t k);

/// Resolves ranking entries against the store.
std::vector<RetrievedSnippet> resolve(const Ranking& ranking, const corpus::SnippetStore& store);

} // namespace ragbench::retrieval
