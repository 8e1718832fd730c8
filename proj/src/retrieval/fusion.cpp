#include "ragbench/retrieval/fusion.hpp"

#include "ragbench/error.hpp"

#include <algorithm>
#include <unordered_map>

namespace ragbench::retrieval {

Ranking rrf_fuse(std::span<const Ranking> rankings, double rrf_k, std::size_t k) {
    if (rankings.empty()) throw UserError("rrf_fuse needs at least one ranking");
    if (!(rrf_k > 0.0)) throw UserError("rrf_k must be positive");

    std::vector<std::string> ids;
    std::vector<std::vector<std::size_t>> ranks;
    std::unordered_map<std::string, std::size_t> slot;
    for (const auto& ranking : rankings) {
        for (const auto& hit : ranking.entries) {
            auto [it, inserted] = slot.emplace(hit.snippet_id, ids.size());
            if (inserted) {
                ids.push_back(hit.snippet_id);
                ranks.emplace_back();
            }
            ranks[it->second].push_back(hit.rank);
        }
    }

    std::vector<ScoredOrdinal> candidates;
    candidates.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        auto& r = ranks[i];
        std::sort(r.begin(), r.end());
        double score = 0.0;
        for (auto rank : r) score += 1.0 / (rrf_k + static_cast<double>(rank));
        candidates.push_back({i, score});
    }

    std::vector<std::string> child_ids;
    for (const auto& ranking : rankings) child_ids.push_back(ranking.retriever_id);
    std::sort(child_ids.begin(), child_ids.end());
    std::string id = "rrf(";
    for (std::size_t i = 0; i < child_ids.size(); ++i) id += (i ? "," : "") + child_ids[i];
    id += ")";

    return select_top_k(std::move(id), ScoreOrder::descending, std::move(candidates), ids, k);
}

} // namespace ragbench::retrieval
