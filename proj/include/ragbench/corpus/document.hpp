#pragma once

#include <string>
#include <variant>
#include <vector>

namespace ragbench::corpus {

struct Section {
    std::string heading;
    std::vector<std::string> paragraphs;
    std::vector<Section> children;
};

using SectionTree = std::vector<Section>;

/// A raw source document before chunking. The body is either flat text or a
/// tree of headed sections.
struct Document {
    std::string doc_id;
    std::string source;
    std::string title;
    std::variant<std::string, SectionTree> body;

    bool is_hierarchical() const noexcept { return std::holds_alternative<SectionTree>(body); }
};

/// One retrieval unit. `id` is "<source>:<doc_id>:<seq>".
struct Snippet {
    std::string id;
    std::string source;
    std::string title;
    std::string content;

    /// Length of `content` in Unicode scalar values.
    std::size_t char_len() const noexcept;

    friend bool operator==(const Snippet&, const Snippet&) = default;
};

std::string make_snippet_id(const std::string& source, const std::string& doc_id, std::size_t seq);

/// Source namespace of a snippet id (the text before the first ':').
std::string source_of_snippet_id(const std::string& snippet_id);

} // namespace ragbench::corpus
