#include "ragbench/corpus/chunker.hpp"

#include "ragbench/utf8.hpp"

#include <stdexcept>

namespace ragbench::corpus {
namespace {

enum Level : int { kBlankLine = 0, kNewline, kSentence, kWhitespace, kHardCut };

struct Piece {
    std::size_t begin;
    std::size_t end;
};

bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_blank(std::string_view s) noexcept {
    for (char c : s) {
        if (!is_space(c)) return false;
    }
    return true;
}

// Positions [pos, pos + width) of each separator occurrence at `level`.
std::vector<Piece> find_separators(std::string_view text, int level) {
    std::vector<Piece> seps;
    switch (level) {
    case kBlankLine:
    case kNewline: {
        const std::string_view sep = level == kBlankLine ? "\n\n" : "\n";
        for (std::size_t pos = text.find(sep); pos != std::string_view::npos;
             pos = text.find(sep, pos + sep.size())) {
            seps.push_back({pos, pos + sep.size()});
        }
        break;
    }
    case kSentence:
        // A space directly after terminal punctuation; the punctuation stays
        // with the preceding sentence.
        for (std::size_t i = 1; i < text.size(); ++i) {
            const char prev = text[i - 1];
            if (text[i] == ' ' && (prev == '.' || prev == '!' || prev == '?')) seps.push_back({i, i + 1});
        }
        break;
    case kWhitespace:
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == ' ' || text[i] == '\t' || text[i] == '\r' || text[i] == '\f' || text[i] == '\v') {
                seps.push_back({i, i + 1});
            }
        }
        break;
    default:
        break;
    }
    return seps;
}

class Splitter {
public:
    explicit Splitter(std::size_t max_chars) : max_(max_chars) { out_.gaps.emplace_back(); }

    void split(std::string_view text, int level) {
        if (text.empty()) return;
        if (utf8::length(text) <= max_) {
            emit_chunk(text);
            return;
        }
        if (level >= kHardCut) {
            while (!text.empty()) {
                const std::size_t cut = utf8::byte_offset(text, max_);
                emit_chunk(text.substr(0, cut));
                text.remove_prefix(cut);
            }
            return;
        }

        const auto seps = find_separators(text, level);
        if (seps.empty()) {
            split(text, level + 1);
            return;
        }

        std::vector<Piece> pieces;
        pieces.reserve(seps.size() + 1);
        std::size_t start = 0;
        for (const auto& s : seps) {
            pieces.push_back({start, s.begin});
            start = s.end;
        }
        pieces.push_back({start, text.size()});

        const std::size_t n = pieces.size();
        std::vector<std::size_t> piece_len(n);
        std::vector<std::size_t> sep_len(seps.size());
        for (std::size_t i = 0; i < n; ++i) {
            piece_len[i] = utf8::length(text.substr(pieces[i].begin, pieces[i].end - pieces[i].begin));
        }
        for (std::size_t i = 0; i < seps.size(); ++i) sep_len[i] = seps[i].end - seps[i].begin;

        auto sep_text = [&](std::size_t i) { return text.substr(seps[i].begin, seps[i].end - seps[i].begin); };

        std::size_t i = 0;
        while (i < n) {
            if (piece_len[i] > max_) {
                split(text.substr(pieces[i].begin, pieces[i].end - pieces[i].begin), level + 1);
                if (i + 1 < n) emit_gap(sep_text(i));
                ++i;
                continue;
            }
            std::size_t j = i;
            std::size_t merged = piece_len[i];
            while (j + 1 < n && piece_len[j + 1] <= max_ && merged + sep_len[j] + piece_len[j + 1] <= max_) {
                merged += sep_len[j] + piece_len[j + 1];
                ++j;
            }
            emit_chunk(text.substr(pieces[i].begin, pieces[j].end - pieces[i].begin));
            if (j + 1 < n) emit_gap(sep_text(j));
            i = j + 1;
        }
    }

    ChunkSplit take() && { return std::move(out_); }

private:
    void emit_gap(std::string_view s) { out_.gaps.back().append(s); }

    void emit_chunk(std::string_view s) {
        if (is_blank(s)) {
            emit_gap(s);
            return;
        }
        out_.chunks.emplace_back(s);
        out_.gaps.emplace_back();
    }

    std::size_t max_;
    ChunkSplit out_;
};

void walk_sections(const SectionTree& sections, const std::string& parent_title, const Document& doc,
                   std::vector<Snippet>& out) {
    for (const auto& section : sections) {
        std::string title = parent_title;
        if (!section.heading.empty()) {
            title.append(kHeadingSeparator);
            title.append(section.heading);
        }
        for (const auto& paragraph : section.paragraphs) {
            if (is_blank(paragraph)) continue;
            out.push_back(Snippet{make_snippet_id(doc.source, doc.doc_id, out.size()), doc.source, title, paragraph});
        }
        walk_sections(section.children, title, doc, out);
    }
}

} // namespace

std::string ChunkSplit::reassemble() const {
    std::string text = gaps.empty() ? std::string{} : gaps.front();
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        text += chunks[i];
        text += gaps[i + 1];
    }
    return text;
}

ChunkSplit split_recursive(std::string_view text, std::size_t max_chars) {
    if (max_chars == 0) throw std::invalid_argument("max_chars must be at least 1");
    Splitter splitter(max_chars);
    splitter.split(text, kBlankLine);
    return std::move(splitter).take();
}

std::vector<std::string> chunk_recursive(std::string_view text, std::size_t max_chars) {
    return split_recursive(text, max_chars).chunks;
}

std::vector<Snippet> chunk_hierarchical(const Document& doc) {
    std::vector<Snippet> out;
    if (const auto* tree = std::get_if<SectionTree>(&doc.body)) walk_sections(*tree, doc.title, doc, out);
    return out;
}

} // namespace ragbench::corpus
