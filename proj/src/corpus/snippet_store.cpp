#include "ragbench/corpus/snippet_store.hpp"

#include "ragbench/digest.hpp"
#include "ragbench/error.hpp"
#include "ragbench/utf8.hpp"

#include <json.hpp>

#include <fstream>

namespace ragbench::corpus {

using ordered_json = nlohmann::ordered_json;

std::size_t Snippet::char_len() const noexcept { return utf8::length(content); }

std::string make_snippet_id(const std::string& source, const std::string& doc_id, std::size_t seq) {
    return source + ":" + doc_id + ":" + std::to_string(seq);
}

std::string source_of_snippet_id(const std::string& snippet_id) {
    return snippet_id.substr(0, snippet_id.find(':'));
}

void SnippetStore::add(Snippet snippet) {
    if (snippet.content.empty()) throw UserError("snippet " + snippet.id + " has empty content");
    auto [it, inserted] = by_id_.emplace(snippet.id, snippets_.size());
    if (!inserted) throw UserError("duplicate snippet id: " + snippet.id);
    ++manifest_[snippet.source];
    snippets_.push_back(std::move(snippet));
}

std::optional<std::size_t> SnippetStore::ordinal_of(const std::string& snippet_id) const {
    auto it = by_id_.find(snippet_id);
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
}

const Snippet* SnippetStore::find(const std::string& snippet_id) const {
    auto ord = ordinal_of(snippet_id);
    return ord ? &snippets_[*ord] : nullptr;
}

std::string SnippetStore::to_jsonl() const {
    std::string out;
    for (const auto& s : snippets_) {
        ordered_json line{{"id", s.id}, {"source", s.source}, {"title", s.title}, {"content", s.content}};
        out += line.dump();
        out += '\n';
    }
    return out;
}

std::string SnippetStore::digest() const { return sha256_hex(to_jsonl()); }

void SnippetStore::save(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    write_file(dir / "snippets.jsonl", to_jsonl());
    ordered_json manifest{{"corpus_name", name_}, {"total", snippets_.size()}, {"sources", manifest_}};
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

SnippetStore SnippetStore::load(const std::filesystem::path& dir) {
    const auto manifest_path = dir / "manifest.json";
    const auto snippets_path = dir / "snippets.jsonl";
    if (!std::filesystem::exists(manifest_path) || !std::filesystem::exists(snippets_path)) {
        throw UserError("snippet store not found in " + dir.string());
    }
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(read_file(manifest_path));
    } catch (const nlohmann::json::exception& e) {
        throw UserError("malformed " + manifest_path.string() + ": " + e.what());
    }

    SnippetStore store(manifest.value("corpus_name", std::string{}));
    std::ifstream in(snippets_path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            auto j = nlohmann::json::parse(line);
            store.add(Snippet{j.at("id").get<std::string>(), j.at("source").get<std::string>(),
                              j.at("title").get<std::string>(), j.at("content").get<std::string>()});
        } catch (const nlohmann::json::exception& e) {
            throw UserError(snippets_path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (manifest.contains("sources") && manifest["sources"].get<Manifest>() != store.manifest()) {
        throw UserError("manifest counts do not match snippets in " + dir.string());
    }
    return store;
}

SnippetStore merge_stores(std::span<const SnippetStore> stores, const std::string& merged_name) {
    if (stores.empty()) throw UserError("merge_stores needs at least one store");
    SnippetStore merged(merged_name);
    for (const auto& store : stores) {
        for (const auto& s : store.snippets()) merged.add(s);
    }
    return merged;
}

} // namespace ragbench::corpus
