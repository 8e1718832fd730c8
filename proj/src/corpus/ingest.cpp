#include "ragbench/corpus/ingest.hpp"

#include "ragbench/corpus/chunker.hpp"
#include "ragbench/error.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

namespace ragbench::corpus {
namespace {

Section parse_section(const nlohmann::json& j) {
    Section s;
    s.heading = j.value("heading", std::string{});
    if (j.contains("paragraphs")) s.paragraphs = j.at("paragraphs").get<std::vector<std::string>>();
    if (j.contains("children")) {
        for (const auto& child : j.at("children")) s.children.push_back(parse_section(child));
    }
    return s;
}

std::vector<std::filesystem::path> input_files(const std::filesystem::path& input) {
    if (!std::filesystem::exists(input)) throw UserError("corpus path not found: " + input.string());
    if (!std::filesystem::is_directory(input)) return {input};
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(input)) {
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw UserError("no .jsonl files in " + input.string());
    return files;
}

} // namespace

ChunkingMode ChunkingMode::parse(std::string_view name, std::size_t max_chars) {
    if (name == "passthrough") return passthrough();
    if (name == "hierarchical") return hierarchical();
    if (name == "recursive") {
        if (max_chars == 0) throw UserError("--max-chars must be at least 1");
        return recursive(max_chars);
    }
    throw UserError("unknown chunking mode: " + std::string(name));
}

std::string ChunkingMode::name() const {
    switch (kind) {
    case Kind::passthrough: return "passthrough";
    case Kind::recursive: return "recursive";
    case Kind::hierarchical: return "hierarchical";
    }
    return "?";
}

Document parse_document(const nlohmann::json& record, const std::string& source) {
    if (!record.is_object()) throw UserError("record is not a JSON object");
    Document doc;
    doc.source = source;
    doc.doc_id = record.at("id").is_string() ? record.at("id").get<std::string>() : record.at("id").dump();
    if (doc.doc_id.empty()) throw UserError("empty document id");
    doc.title = record.value("title", std::string{});
    if (record.contains("sections")) {
        SectionTree tree;
        for (const auto& s : record.at("sections")) tree.push_back(parse_section(s));
        doc.body = std::move(tree);
    } else if (record.contains("content")) {
        auto content = record.at("content").get<std::string>();
        if (content.empty()) throw UserError("document " + doc.doc_id + " has empty content");
        doc.body = std::move(content);
    } else {
        throw UserError("document " + doc.doc_id + " has neither \"content\" nor \"sections\"");
    }
    return doc;
}

std::vector<Snippet> chunk_document(const Document& doc, const ChunkingMode& mode) {
    if (mode.kind == ChunkingMode::Kind::hierarchical) {
        if (!doc.is_hierarchical()) throw UserError("document " + doc.doc_id + " has no sections");
        return chunk_hierarchical(doc);
    }
    if (doc.is_hierarchical()) {
        throw UserError("document " + doc.doc_id + " is sectioned; use hierarchical chunking");
    }
    const auto& text = std::get<std::string>(doc.body);
    std::vector<Snippet> out;
    if (mode.kind == ChunkingMode::Kind::passthrough) {
        out.push_back(Snippet{make_snippet_id(doc.source, doc.doc_id, 0), doc.source, doc.title, text});
        return out;
    }
    for (auto& chunk : chunk_recursive(text, mode.max_chars)) {
        out.push_back(Snippet{make_snippet_id(doc.source, doc.doc_id, out.size()), doc.source, doc.title,
                              std::move(chunk)});
    }
    return out;
}

SnippetStore ingest_corpus(const std::filesystem::path& input, const std::string& source, const ChunkingMode& mode) {
    if (source.empty() || source.find(':') != std::string::npos) {
        throw UserError("corpus name must be non-empty and contain no ':': " + source);
    }
    SnippetStore store(source);
    std::unordered_map<std::string, std::string> seen; // doc_id -> "file:line"
    for (const auto& file : input_files(input)) {
        std::ifstream in(file);
        if (!in) throw UserError("cannot read " + file.string());
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            const std::string where = file.string() + ":" + std::to_string(line_no);
            Document doc;
            try {
                doc = parse_document(nlohmann::json::parse(line), source);
            } catch (const nlohmann::json::exception& e) {
                throw UserError(where + ": malformed record: " + e.what());
            } catch (const UserError& e) {
                throw UserError(where + ": " + e.what());
            }
            auto [it, inserted] = seen.emplace(doc.doc_id, where);
            if (!inserted) {
                throw UserError("duplicate doc_id '" + doc.doc_id + "' at " + where + " (first seen at " +
                                it->second + ")");
            }
            try {
                for (auto& snippet : chunk_document(doc, mode)) store.add(std::move(snippet));
            } catch (const UserError& e) {
                throw UserError(where + ": " + e.what());
            }
        }
    }
    return store;
}

} // namespace ragbench::corpus
