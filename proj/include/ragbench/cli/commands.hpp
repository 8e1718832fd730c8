#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ragbench::cli {

std::string_view version() noexcept;

struct IndexOptions {
    std::filesystem::path corpus; // .jsonl file or directory of them
    std::string name;             // corpus / source name
    std::string chunking = "recursive";
    std::size_t max_chars = 1000;
    std::vector<std::string> embed_providers;
    std::vector<std::string> metrics{"ip"};
    std::optional<std::filesystem::path> providers_config;
    std::filesystem::path out;
};

struct MergeOptions {
    std::vector<std::filesystem::path> inputs; // index directories
    std::string name;
    std::vector<std::string> embed_providers;
    std::vector<std::string> metrics{"ip"};
    std::optional<std::filesystem::path> providers_config;
    std::filesystem::path out;
};

struct RunOptions {
    std::vector<std::filesystem::path> tasks;
    std::optional<std::string> dataset; // key inside a dataset-keyed task file
    std::filesystem::path config;
    std::optional<std::size_t> k;
    std::optional<std::string> backend;
    std::optional<std::string> template_id;
    std::vector<std::size_t> ks; // non-empty: scaling sweep
    std::filesystem::path out;
};

struct AnalyzeOptions {
    std::filesystem::path records;
    std::string mode; // scaling | position | proportion
    std::vector<std::size_t> bins;
    std::vector<std::size_t> ks;
    std::optional<std::filesystem::path> manifest; // store manifest.json or its index directory
    std::optional<double> baseline;
    std::optional<std::string> task; // restrict to one task id
    std::string format = "json";
    std::optional<std::filesystem::path> out;
};

// Each command throws UserError for bad input; messages go to `out`.
void cmd_index(const IndexOptions& opts, std::ostream& out);
void cmd_merge(const MergeOptions& opts, std::ostream& out);
void cmd_run(const RunOptions& opts, std::ostream& out);
void cmd_analyze(const AnalyzeOptions& opts, std::ostream& out);

/// Parses argv and dispatches. Returns 0 on success, 1 on internal
/// failure, 2 on user or configuration error.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace ragbench::cli
