#include "ragbench/retrieval/vector_index.hpp"

#include "ragbench/error.hpp"

#include <cmath>

namespace ragbench::retrieval {

std::string_view metric_name(Metric metric) noexcept { return metric == Metric::inner_product ? "ip" : "l2"; }

Metric parse_metric(std::string_view name) {
    if (name == "ip" || name == "inner_product") return Metric::inner_product;
    if (name == "l2") return Metric::l2;
    throw UserError("unknown metric: " + std::string(name));
}

VectorIndex::VectorIndex(std::string provider_id, Metric metric, std::size_t dim)
    : provider_id_(std::move(provider_id)), metric_(metric), dim_(dim) {
    if (dim_ == 0) throw UserError("vector dimension must be positive");
}

void VectorIndex::add(std::string snippet_id, std::span<const float> vector) {
    if (vector.size() != dim_) {
        throw UserError("vector for " + snippet_id + " has dim " + std::to_string(vector.size()) + ", index expects " +
                        std::to_string(dim_));
    }
    ids_.push_back(std::move(snippet_id));
    data_.insert(data_.end(), vector.begin(), vector.end());
}

std::string VectorIndex::retriever_id() const {
    return "dense:" + provider_id_ + ":" + std::string(metric_name(metric_));
}

Ranking VectorIndex::search(std::span<const float> query, std::size_t k, const kernels::DistanceKernels& kernels) const {
    if (query.size() != dim_) {
        throw UserError("query vector has dim " + std::to_string(query.size()) + ", index " + retriever_id() +
                        " expects " + std::to_string(dim_));
    }
    std::vector<double> scores(size());
    if (metric_ == Metric::inner_product) {
        kernels.dot(data_.data(), size(), dim_, query.data(), scores.data());
    } else {
        kernels.l2_squared(data_.data(), size(), dim_, query.data(), scores.data());
        for (auto& s : scores) s = std::sqrt(s);
    }
    std::vector<ScoredOrdinal> candidates(size());
    for (std::size_t i = 0; i < size(); ++i) candidates[i] = {i, scores[i]};
    const auto order = metric_ == Metric::inner_product ? ScoreOrder::descending : ScoreOrder::ascending;
    return select_top_k(retriever_id(), order, std::move(candidates), ids_, k);
}

} // namespace ragbench::retrieval
