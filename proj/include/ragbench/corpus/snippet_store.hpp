#pragma once

#include "ragbench/corpus/document.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ragbench::corpus {

/// Per-source snippet counts. Ordered so serialization is stable.
using Manifest = std::map<std::string, std::size_t>;

/// Append-ordered collection of snippets with unique ids.
///
/// A store is built once (by ingestion, loading or merging) and is then only
/// read; concurrent readers need no synchronization.
class SnippetStore {
public:
    SnippetStore() = default;
    explicit SnippetStore(std::string corpus_name) : name_(std::move(corpus_name)) {}

    /// Appends a snippet. Throws UserError on a duplicate id or empty content.
    void add(Snippet snippet);

    const std::string& name() const noexcept { return name_; }
    void rename(std::string name) { name_ = std::move(name); }

    std::size_t size() const noexcept { return snippets_.size(); }
    bool empty() const noexcept { return snippets_.empty(); }
    std::span<const Snippet> snippets() const noexcept { return snippets_; }
    const Snippet& operator[](std::size_t ordinal) const { return snippets_[ordinal]; }

    const Manifest& manifest() const noexcept { return manifest_; }

    std::optional<std::size_t> ordinal_of(const std::string& snippet_id) const;
    const Snippet* find(const std::string& snippet_id) const;

    /// Writes snippets.jsonl and manifest.json into `dir` (created if needed).
    void save(const std::filesystem::path& dir) const;
    static SnippetStore load(const std::filesystem::path& dir);

    /// SHA-256 over the serialized snippets.jsonl bytes.
    std::string digest() const;

    /// Serialized snippets.jsonl content.
    std::string to_jsonl() const;

private:
    std::string name_;
    std::vector<Snippet> snippets_;
    std::unordered_map<std::string, std::size_t> by_id_;
    Manifest manifest_;
};

/// Concatenates stores in argument order under a new name. Throws UserError on
/// an empty input list or an id collision.
SnippetStore merge_stores(std::span<const SnippetStore> stores, const std::string& merged_name);

} // namespace ragbench::corpus
