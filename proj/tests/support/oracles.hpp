#pragma once

// Reference implementations written straight from the formulas, with no
// indexes or shortcuts, for comparison against the engine.

#include "ragbench/corpus/snippet_store.hpp"
#include "ragbench/retrieval/vector_index.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ragbench::testkit {

std::vector<std::string> oracle_tokenize(std::string_view text);

struct OracleHit {
    std::string id;
    double score;
};

double oracle_bm25_score(const std::vector<std::vector<std::string>>& docs, const std::vector<std::string>& query,
                         std::size_t doc, double k1, double b);

/// Scores every snippet; keeps score > 0; sorts by score desc then id.
std::vector<OracleHit> oracle_bm25_search(const corpus::SnippetStore& store, std::string_view query, std::size_t k,
                                          double k1 = 0.9, double b = 0.4);

/// Plain sequential double sums; L2 reports Euclidean distance.
std::vector<OracleHit> oracle_vector_search(const std::vector<std::vector<float>>& rows,
                                            const std::vector<std::string>& ids, const std::vector<float>& query,
                                            retrieval::Metric metric, std::size_t k);

/// Σ 1/(K + rank) over the rankings containing each id; desc, ties by id.
std::vector<OracleHit> oracle_rrf(const std::vector<std::vector<std::string>>& rankings, double K, std::size_t k);

} // namespace ragbench::testkit
