#pragma once

#include "ragbench/corpus/snippet_store.hpp"
#include "ragbench/retrieval/ranking.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ragbench::retrieval {

/// Okapi BM25 parameters. The defaults are the usual Lucene/Anserini values.
struct Bm25Params {
    double k1 = 0.9;
    double b = 0.4;
};

struct Posting {
    std::uint32_t ordinal;
    std::uint32_t tf;

    friend bool operator==(const Posting&, const Posting&) = default;
};

/// Inverted index over the title and content tokens of a snippet store.
///
/// Score of snippet d for query q (distinct terms t of q):
///   sum_t idf(t) * tf * (k1 + 1) / (tf + k1 * (1 - b + b * dl / avgdl))
///   idf(t) = ln(1 + (N - df + 0.5) / (df + 0.5))
class LexicalIndex {
public:
    /// Throws UserError on an empty store.
    static LexicalIndex build(const corpus::SnippetStore& store, Bm25Params params = {});

    static double idf(std::size_t n_docs, std::size_t df) noexcept;

    std::size_t doc_count() const noexcept { return doc_lens_.size(); }
    double avgdl() const noexcept { return avgdl_; }
    const Bm25Params& params() const noexcept { return params_; }
    std::span<const std::uint32_t> doc_lens() const noexcept { return doc_lens_; }
    std::span<const std::string> snippet_ids() const noexcept { return ids_; }
    std::size_t vocabulary_size() const noexcept { return postings_.size(); }

    /// Postings sorted by ordinal; empty for unknown terms.
    std::span<const Posting> postings(std::string_view term) const;
    std::size_t df(std::string_view term) const { return postings(term).size(); }

    /// BM25 score of one snippet. Repeated query terms count once.
    double score(std::span<const std::string> query_terms, std::size_t ordinal) const;

    /// Top-k snippets with a positive score, ties by ascending id.
    Ranking search(std::string_view query, std::size_t k) const;
    Ranking search_terms(std::span<const std::string> query_terms, std::size_t k) const;

    void save(const std::filesystem::path& file) const;
    static LexicalIndex load(const std::filesystem::path& file);
    std::string serialize() const;

    static constexpr std::string_view kRetrieverId = "bm25";

private:
    double term_weight(double idf, std::uint32_t tf, std::uint32_t dl) const noexcept;
    std::vector<std::string> distinct_terms(std::span<const std::string> terms) const;

    Bm25Params params_;
    std::vector<std::string> ids_;
    std::vector<std::uint32_t> doc_lens_;
    double avgdl_ = 0.0;
    std::unordered_map<std::string, std::vector<Posting>> postings_;
};

} // namespace ragbench::retrieval
