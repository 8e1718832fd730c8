#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ragbench::retrieval {

/// Whether larger scores rank higher (inner product, BM25, RRF) or smaller
/// ones do (L2 distance).
enum class ScoreOrder { descending, ascending };

struct RankedHit {
    std::string snippet_id;
    double score = 0.0;
    std::size_t rank = 0; // 1-based

    friend bool operator==(const RankedHit&, const RankedHit&) = default;
};

struct Ranking {
    std::string retriever_id;
    ScoreOrder order = ScoreOrder::descending;
    std::vector<RankedHit> entries;

    std::size_t size() const noexcept { return entries.size(); }
    bool empty() const noexcept { return entries.empty(); }
    std::vector<std::string> ids() const;

    /// First `k` entries (ranks are unchanged).
    Ranking truncated(std::size_t k) const;

    friend bool operator==(const Ranking&, const Ranking&) = default;
};

struct ScoredOrdinal {
    std::size_t ordinal;
    double score;
};

/// Orders candidates best-first (ties by ascending snippet id), keeps the top
/// `k`, and assigns ranks 1..n. `ids` maps ordinal to snippet id.
Ranking select_top_k(std::string retriever_id, ScoreOrder order, std::vector<ScoredOrdinal> candidates,
                     std::span<const std::string> ids, std::size_t k);

/// Checks the ranking invariants: ranks 1..n without gaps, monotone scores,
/// ties in ascending id order, no duplicate ids. Returns a description of the
/// first violation, or nullopt.
std::optional<std::string> check_ranking(const Ranking& ranking);

} // namespace ragbench::retrieval
