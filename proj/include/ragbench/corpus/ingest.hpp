#pragma once

#include "ragbench/corpus/document.hpp"
#include "ragbench/corpus/snippet_store.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace ragbench::corpus {

struct ChunkingMode {
    enum class Kind { passthrough, recursive, hierarchical };
    Kind kind = Kind::passthrough;
    std::size_t max_chars = 1000;

    static ChunkingMode passthrough() { return {Kind::passthrough, 0}; }
    static ChunkingMode recursive(std::size_t max_chars) { return {Kind::recursive, max_chars}; }
    static ChunkingMode hierarchical() { return {Kind::hierarchical, 0}; }

    /// "passthrough" | "recursive" | "hierarchical".
    static ChunkingMode parse(std::string_view name, std::size_t max_chars = 1000);
    std::string name() const;
};

/// Parses one JSONL record: {"id","title","content"} or
/// {"id","title","sections":[{"heading","paragraphs":[...],"children":[...]}]}.
Document parse_document(const nlohmann::json& record, const std::string& source);

/// Snippets for one document under `mode`. Ids are "<source>:<doc_id>:<seq>".
std::vector<Snippet> chunk_document(const Document& doc, const ChunkingMode& mode);

/// Reads a JSONL file, or every *.jsonl file of a directory in name order, and
/// chunks each document. Errors (UserError) carry file and line; a doc_id seen
/// twice is rejected by name.
SnippetStore ingest_corpus(const std::filesystem::path& input, const std::string& source, const ChunkingMode& mode);

} // namespace ragbench::corpus
