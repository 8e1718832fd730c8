#include "ragbench/retrieval/ranking.hpp"

#include <algorithm>
#include <unordered_set>

namespace ragbench::retrieval {

std::vector<std::string> Ranking::ids() const {
    std::vector<std::string> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.snippet_id);
    return out;
}

Ranking Ranking::truncated(std::size_t k) const {
    Ranking r{retriever_id, order, {}};
    r.entries.assign(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(std::min(k, entries.size())));
    return r;
}

Ranking select_top_k(std::string retriever_id, ScoreOrder order, std::vector<ScoredOrdinal> candidates,
                     std::span<const std::string> ids, std::size_t k) {
    auto better = [&](const ScoredOrdinal& a, const ScoredOrdinal& b) {
        if (a.score != b.score) return order == ScoreOrder::descending ? a.score > b.score : a.score < b.score;
        return ids[a.ordinal] < ids[b.ordinal];
    };
    const std::size_t keep = std::min(k, candidates.size());
    if (keep < candidates.size()) {
        std::nth_element(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep), candidates.end(),
                         better);
        candidates.resize(keep);
    }
    std::sort(candidates.begin(), candidates.end(), better);

    Ranking ranking{std::move(retriever_id), order, {}};
    ranking.entries.reserve(keep);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        ranking.entries.push_back({ids[candidates[i].ordinal], candidates[i].score, i + 1});
    }
    return ranking;
}

std::optional<std::string> check_ranking(const Ranking& ranking) {
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
        const auto& e = ranking.entries[i];
        if (e.rank != i + 1) return "rank gap at position " + std::to_string(i + 1);
        if (!seen.insert(e.snippet_id).second) return "duplicate snippet id " + e.snippet_id;
        if (i == 0) continue;
        const auto& prev = ranking.entries[i - 1];
        const bool out_of_order = ranking.order == ScoreOrder::descending ? e.score > prev.score : e.score < prev.score;
        if (out_of_order) return "score order violated at rank " + std::to_string(e.rank);
        if (e.score == prev.score && e.snippet_id < prev.snippet_id) {
            return "tie not broken by ascending id at rank " + std::to_string(e.rank);
        }
    }
    return std::nullopt;
}

} // namespace ragbench::retrieval
