#include "ragbench/retrieval/lexical_index.hpp"

#include "ragbench/binary_io.hpp"
#include "ragbench/digest.hpp"
#include "ragbench/error.hpp"
#include "ragbench/retrieval/tokenizer.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace ragbench::retrieval {
namespace {

constexpr std::string_view kMagic = "RBLEX001";

} // namespace

LexicalIndex LexicalIndex::build(const corpus::SnippetStore& store, Bm25Params params) {
    if (store.empty()) throw UserError("cannot build a lexical index over an empty store");
    LexicalIndex index;
    index.params_ = params;
    index.ids_.reserve(store.size());
    index.doc_lens_.reserve(store.size());

    std::unordered_map<std::string, std::uint32_t> tf;
    std::uint64_t total = 0;
    for (std::size_t ord = 0; ord < store.size(); ++ord) {
        const auto& snippet = store[ord];
        tf.clear();
        std::uint32_t len = 0;
        for (const auto* field : {&snippet.title, &snippet.content}) {
            for (auto& term : tokenize(*field)) {
                ++tf[std::move(term)];
                ++len;
            }
        }
        for (auto& [term, count] : tf) {
            index.postings_[term].push_back({static_cast<std::uint32_t>(ord), count});
        }
        index.ids_.push_back(snippet.id);
        index.doc_lens_.push_back(len);
        total += len;
    }
    index.avgdl_ = static_cast<double>(total) / static_cast<double>(store.size());
    return index;
}

double LexicalIndex::idf(std::size_t n_docs, std::size_t df) noexcept {
    const double n = static_cast<double>(n_docs);
    const double d = static_cast<double>(df);
    return std::log(1.0 + (n - d + 0.5) / (d + 0.5));
}

double LexicalIndex::term_weight(double term_idf, std::uint32_t tf, std::uint32_t dl) const noexcept {
    const double f = tf;
    const double norm = params_.k1 * (1.0 - params_.b + params_.b * static_cast<double>(dl) / avgdl_);
    return term_idf * f * (params_.k1 + 1.0) / (f + norm);
}

std::span<const Posting> LexicalIndex::postings(std::string_view term) const {
    auto it = postings_.find(std::string(term));
    if (it == postings_.end()) return {};
    return it->second;
}

std::vector<std::string> LexicalIndex::distinct_terms(std::span<const std::string> terms) const {
    std::vector<std::string> out;
    std::unordered_set<std::string_view> seen;
    for (const auto& t : terms) {
        if (seen.insert(t).second) out.push_back(t);
    }
    return out;
}

double LexicalIndex::score(std::span<const std::string> query_terms, std::size_t ordinal) const {
    double total = 0.0;
    for (const auto& term : distinct_terms(query_terms)) {
        const auto list = postings(term);
        auto it = std::lower_bound(list.begin(), list.end(), ordinal,
                                   [](const Posting& p, std::size_t ord) { return p.ordinal < ord; });
        if (it == list.end() || it->ordinal != ordinal) continue;
        total += term_weight(idf(doc_count(), list.size()), it->tf, doc_lens_[ordinal]);
    }
    return total;
}

Ranking LexicalIndex::search(std::string_view query, std::size_t k) const {
    const auto terms = tokenize(query);
    return search_terms(terms, k);
}

Ranking LexicalIndex::search_terms(std::span<const std::string> query_terms, std::size_t k) const {
    // Accumulation follows the same term order as score(), so both paths
    // produce bit-identical sums.
    std::vector<double> acc(doc_count(), 0.0);
    std::vector<std::uint32_t> touched;
    for (const auto& term : distinct_terms(query_terms)) {
        const auto list = postings(term);
        if (list.empty()) continue;
        const double term_idf = idf(doc_count(), list.size());
        for (const auto& p : list) {
            if (acc[p.ordinal] == 0.0) touched.push_back(p.ordinal);
            acc[p.ordinal] += term_weight(term_idf, p.tf, doc_lens_[p.ordinal]);
        }
    }
    std::vector<ScoredOrdinal> candidates;
    candidates.reserve(touched.size());
    for (auto ord : touched) {
        if (acc[ord] > 0.0) candidates.push_back({ord, acc[ord]});
    }
    return select_top_k(std::string(kRetrieverId), ScoreOrder::descending, std::move(candidates), ids_, k);
}

std::string LexicalIndex::serialize() const {
    std::string out(kMagic);
    binio::put_f64(out, params_.k1);
    binio::put_f64(out, params_.b);
    binio::put_u64(out, ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        binio::put_str(out, ids_[i]);
        binio::put_u32(out, doc_lens_[i]);
    }
    std::vector<const std::string*> terms;
    terms.reserve(postings_.size());
    for (const auto& [term, _] : postings_) terms.push_back(&term);
    std::sort(terms.begin(), terms.end(), [](const auto* a, const auto* b) { return *a < *b; });
    binio::put_u64(out, terms.size());
    for (const auto* term : terms) {
        const auto& list = postings_.at(*term);
        binio::put_str(out, *term);
        binio::put_u64(out, list.size());
        for (const auto& p : list) {
            binio::put_u32(out, p.ordinal);
            binio::put_u32(out, p.tf);
        }
    }
    return out;
}

void LexicalIndex::save(const std::filesystem::path& file) const { write_file(file, serialize()); }

LexicalIndex LexicalIndex::load(const std::filesystem::path& file) {
    const std::string bytes = read_file(file);
    binio::Reader in(bytes, "lexical index " + file.string());
    if (in.raw(kMagic.size()) != kMagic) throw UserError("not a lexical index: " + file.string());
    LexicalIndex index;
    index.params_.k1 = in.f64();
    index.params_.b = in.f64();
    const auto n = in.u64();
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        index.ids_.push_back(in.str());
        index.doc_lens_.push_back(in.u32());
        total += index.doc_lens_.back();
    }
    if (n == 0) throw UserError("empty lexical index: " + file.string());
    index.avgdl_ = static_cast<double>(total) / static_cast<double>(n);
    const auto n_terms = in.u64();
    for (std::uint64_t t = 0; t < n_terms; ++t) {
        auto term = in.str();
        const auto n_postings = in.u64();
        std::vector<Posting> list;
        list.reserve(n_postings);
        for (std::uint64_t i = 0; i < n_postings; ++i) {
            const auto ord = in.u32();
            const auto tf = in.u32();
            if (ord >= n) throw UserError("posting ordinal out of range in " + file.string());
            list.push_back({ord, tf});
        }
        index.postings_.emplace(std::move(term), std::move(list));
    }
    if (!in.at_end()) throw UserError("trailing bytes in " + file.string());
    return index;
}

} // namespace ragbench::retrieval
