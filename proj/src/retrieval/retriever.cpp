#include "ragbench/retrieval/retriever.hpp"

#include "ragbench/error.hpp"

#include <algorithm>
#include <set>

namespace ragbench::retrieval {
namespace {

std::string dense_key(const std::string& provider_id, Metric metric) {
    return provider_id + "\x1f" + std::string(metric_name(metric));
}

} // namespace

RetrieverSpec RetrieverSpec::lexical() { return {}; }

RetrieverSpec RetrieverSpec::dense(std::string provider_id, Metric metric) {
    RetrieverSpec s;
    s.kind = Kind::dense;
    s.provider_id = std::move(provider_id);
    s.metric = metric;
    return s;
}

RetrieverSpec RetrieverSpec::fusion(std::vector<RetrieverSpec> children, double rrf_k) {
    RetrieverSpec s;
    s.kind = Kind::fusion;
    s.children = std::move(children);
    s.rrf_k = rrf_k;
    return s;
}

std::string RetrieverSpec::id() const {
    switch (kind) {
    case Kind::lexical: return std::string(LexicalIndex::kRetrieverId);
    case Kind::dense: return "dense:" + provider_id + ":" + std::string(metric_name(metric));
    case Kind::fusion: {
        std::vector<std::string> ids;
        for (const auto& c : children) ids.push_back(c.id());
        std::sort(ids.begin(), ids.end());
        std::string out = "rrf(";
        for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? "," : "") + ids[i];
        return out + ")";
    }
    }
    return {};
}

void RetrieverSpec::validate() const {
    switch (kind) {
    case Kind::lexical: return;
    case Kind::dense:
        if (provider_id.empty()) throw UserError("dense retriever needs a provider id");
        return;
    case Kind::fusion: {
        if (children.size() < 2) throw UserError("fusion retriever needs at least two children");
        if (!(rrf_k > 0.0)) throw UserError("rrf_k must be positive");
        std::set<std::string> seen;
        for (const auto& c : children) {
            c.validate();
            if (!seen.insert(c.id()).second) throw UserError("duplicate fusion child: " + c.id());
        }
        return;
    }
    }
}

RetrieverSpec RetrieverSpec::from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "bm25" || s == "lexical") return lexical();
        throw UserError("unknown retriever shorthand: " + s);
    }
    const auto kind = j.at("kind").get<std::string>();
    RetrieverSpec spec;
    if (kind == "lexical" || kind == "bm25") {
        spec = lexical();
    } else if (kind == "dense") {
        spec = dense(j.at("provider").get<std::string>(), parse_metric(j.value("metric", std::string{"ip"})));
    } else if (kind == "fusion" || kind == "rrf") {
        std::vector<RetrieverSpec> children;
        for (const auto& c : j.at("children")) children.push_back(from_json(c));
        spec = fusion(std::move(children), j.value("rrf_k", kDefaultRrfK));
    } else {
        throw UserError("unknown retriever kind: " + kind);
    }
    spec.validate();
    return spec;
}

nlohmann::ordered_json RetrieverSpec::to_json() const {
    switch (kind) {
    case Kind::lexical: return {{"kind", "lexical"}};
    case Kind::dense: return {{"kind", "dense"}, {"provider", provider_id}, {"metric", metric_name(metric)}};
    case Kind::fusion: {
        nlohmann::ordered_json children_json = nlohmann::ordered_json::array();
        for (const auto& c : children) children_json.push_back(c.to_json());
        return {{"kind", "fusion"}, {"rrf_k", rrf_k}, {"children", children_json}};
    }
    }
    return {};
}

std::vector<std::pair<std::string, Metric>> RetrieverSpec::dense_requirements() const {
    std::vector<std::pair<std::string, Metric>> out;
    if (kind == Kind::dense) out.emplace_back(provider_id, metric);
    for (const auto& c : children) {
        for (auto& r : c.dense_requirements()) {
            if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(std::move(r));
        }
    }
    return out;
}

bool RetrieverSpec::needs_lexical() const {
    if (kind == Kind::lexical) return true;
    return std::any_of(children.begin(), children.end(), [](const auto& c) { return c.needs_lexical(); });
}

void IndexSet::set_lexical(LexicalIndex index) {
    if (index.doc_count() != store_->size()) {
        throw UserError("lexical index covers " + std::to_string(index.doc_count()) + " snippets, store has " +
                        std::to_string(store_->size()));
    }
    lexical_ = std::move(index);
}

void IndexSet::add_dense(VectorIndex index, std::shared_ptr<EmbeddingProvider> provider) {
    if (index.size() != store_->size()) {
        throw UserError("vector index " + index.retriever_id() + " covers " + std::to_string(index.size()) +
                        " snippets, store has " + std::to_string(store_->size()));
    }
    if (!provider || provider->id() != index.provider_id() || provider->dim() != index.dim()) {
        throw UserError("embedding provider does not match vector index " + index.retriever_id());
    }
    auto key = dense_key(index.provider_id(), index.metric());
    dense_.insert_or_assign(std::move(key), Dense{std::move(index), std::move(provider)});
}

const IndexSet::Dense* IndexSet::dense(const std::string& provider_id, Metric metric) const {
    auto it = dense_.find(dense_key(provider_id, metric));
    return it == dense_.end() ? nullptr : &it->second;
}

void IndexSet::require(const RetrieverSpec& spec) const {
    switch (spec.kind) {
    case RetrieverSpec::Kind::lexical:
        if (!lexical()) throw UserError("missing index for retriever " + spec.id());
        return;
    case RetrieverSpec::Kind::dense:
        if (!dense(spec.provider_id, spec.metric)) throw UserError("missing index for retriever " + spec.id());
        return;
    case RetrieverSpec::Kind::fusion:
        for (const auto& c : spec.children) require(c);
        return;
    }
}

Ranking retrieve_ranking(std::string_view question, const IndexSet& indexes, const RetrieverSpec& spec, std::size_t k) {
    switch (spec.kind) {
    case RetrieverSpec::Kind::lexical: {
        const auto* index = indexes.lexical();
        if (!index) throw UserError("missing index for retriever " + spec.id());
        return index->search(question, k);
    }
    case RetrieverSpec::Kind::dense: {
        const auto* dense = indexes.dense(spec.provider_id, spec.metric);
        if (!dense) throw UserError("missing index for retriever " + spec.id());
        const std::string text(question);
        const auto qvec = dense->provider->embed(std::span<const std::string>(&text, 1), EmbedMode::query);
        return dense->index.search(qvec.front(), k);
    }
    case RetrieverSpec::Kind::fusion: {
        std::vector<Ranking> child_rankings;
        child_rankings.reserve(spec.children.size());
        for (const auto& child : spec.children) {
            child_rankings.push_back(retrieve_ranking(question, indexes, child, fusion_pool_size(k)));
        }
        return rrf_fuse(child_rankings, spec.rrf_k, k);
    }
    }
    throw Error("unreachable retriever kind");
}

std::vector<RetrievedSnippet> resolve(const Ranking& ranking, const corpus::SnippetStore& store) {
    std::vector<RetrievedSnippet> out;
    out.reserve(ranking.size());
    for (const auto& hit : ranking.entries) {
        const auto* snippet = store.find(hit.snippet_id);
        if (!snippet) throw UserError("index refers to unknown snippet " + hit.snippet_id);
        out.push_back({snippet, hit.score, hit.rank});
    }
    return out;
}

std::vector<RetrievedSnippet> retrieve(std::string_view question, const IndexSet& indexes, const RetrieverSpec& spec,
                                       std::size_t k) {
    return resolve(retrieve_ranking(question, indexes, spec, k), indexes.store());
}

} // namespace ragbench::retrieval
