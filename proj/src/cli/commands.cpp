#include "ragbench/cli/commands.hpp"

#include "ragbench/benchmark/analysis.hpp"
#include "ragbench/benchmark/evaluator.hpp"
#include "ragbench/benchmark/report.hpp"
#include "ragbench/benchmark/run_config.hpp"
#include "ragbench/benchmark/task.hpp"
#include "ragbench/corpus/ingest.hpp"
#include "ragbench/corpus/snippet_store.hpp"
#include "ragbench/digest.hpp"
#include "ragbench/error.hpp"
#include "ragbench/kernels/distance.hpp"
#include "ragbench/retrieval/embedding.hpp"
#include "ragbench/retrieval/lexical_index.hpp"
#include "ragbench/retrieval/retriever.hpp"
#include "ragbench/retrieval/vector_index.hpp"

#include <chrono>
#include <ctime>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#ifndef RAGBENCH_VERSION
#define RAGBENCH_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace ragbench::cli {
namespace {

constexpr const char* kLexicalFile = "lexical.bin";

std::string utc_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json read_json_file(const fs::path& path) {
    auto j = nlohmann::json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) throw UserError(path.string() + ": not valid JSON");
    return j;
}

retrieval::ProviderRegistry make_registry(const std::optional<fs::path>& config) {
    if (!config) return retrieval::ProviderRegistry{};
    return retrieval::ProviderRegistry{read_json_file(*config)};
}

// Lexical index plus any requested vector caches, written next to the store.
ordered_json write_indexes(const corpus::SnippetStore& store, const fs::path& out,
                           const std::vector<std::string>& providers, const std::vector<std::string>& metrics,
                           retrieval::ProviderRegistry& registry) {
    fs::create_directories(out);
    store.save(out);
    const auto lexical = retrieval::LexicalIndex::build(store);
    lexical.save(out / kLexicalFile);

    ordered_json info;
    info["corpus_name"] = store.name();
    info["total"] = store.size();
    info["sources"] = store.manifest();
    info["store_digest"] = store.digest();
    info["lexical_digest"] = sha256_file(out / kLexicalFile);
    ordered_json vectors = ordered_json::array();
    for (const auto& pid : providers) {
        auto provider = registry.get(pid);
        for (const auto& m : metrics) {
            const auto metric = retrieval::parse_metric(m);
            const auto index = retrieval::build_vector_index(store, *provider, metric);
            const auto stem = retrieval::vector_cache_stem(out, pid, metric);
            retrieval::save_vector_cache(index, stem);
            fs::path data = stem;
            data += ".f32";
            vectors.push_back({{"retriever", index.retriever_id()}, {"digest", sha256_file(data)}});
        }
    }
    info["vectors"] = std::move(vectors);
    return info;
}

std::vector<std::size_t> parse_size_list(const std::string& text, const char* what) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) continue;
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(part, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != part.size() || part.front() == '-') throw UserError(std::string("bad ") + what + " value: " + part);
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

struct LoadedIndexes {
    std::unique_ptr<corpus::SnippetStore> store;
    std::unique_ptr<retrieval::IndexSet> set;
    ordered_json digests = ordered_json::object();
};

LoadedIndexes load_indexes(const bench::RunConfig& cfg) {
    if (cfg.index_dir.empty()) throw UserError("config has no index_dir but k > 0");
    if (!fs::is_directory(cfg.index_dir)) throw UserError("index directory not found: " + cfg.index_dir.string());
    LoadedIndexes out;
    out.store = std::make_unique<corpus::SnippetStore>(corpus::SnippetStore::load(cfg.index_dir));
    out.set = std::make_unique<retrieval::IndexSet>(*out.store);
    out.digests["snippets.jsonl"] = sha256_file(cfg.index_dir / "snippets.jsonl");

    const auto& spec = cfg.retriever;
    if (spec.needs_lexical()) {
        const auto file = cfg.index_dir / kLexicalFile;
        if (!fs::exists(file)) throw UserError("missing index for retriever bm25: " + file.string());
        out.set->set_lexical(retrieval::LexicalIndex::load(file));
        out.digests[kLexicalFile] = sha256_file(file);
    }
    retrieval::ProviderRegistry registry(cfg.providers);
    for (const auto& [pid, metric] : spec.dense_requirements()) {
        const auto stem = retrieval::vector_cache_stem(cfg.index_dir, pid, metric);
        fs::path data = stem;
        data += ".f32";
        if (!fs::exists(data)) {
            throw UserError("missing index for retriever dense:" + pid + ":" + std::string(retrieval::metric_name(metric)) +
                            ": " + data.string());
        }
        out.set->add_dense(retrieval::load_vector_cache(stem), registry.get(pid));
        out.digests[data.filename().string()] = sha256_file(data);
    }
    out.set->require(spec);
    return out;
}

void print_summary(std::ostream& out, const std::vector<std::pair<std::string, bench::TaskReport>>& rows) {
    std::size_t width = 4;
    for (const auto& [label, r] : rows) width = std::max(width, label.size());
    out << std::left;
    for (const auto& [label, r] : rows) {
        out << "  " << label << std::string(width - label.size(), ' ') << "  n=" << r.n << "  "
            << bench::format_cell(r.accuracy, r.std);
        if (r.n_failed) out << "  failed=" << r.n_failed;
        if (r.n_parse_failed) out << "  unparsed=" << r.n_parse_failed;
        out << '\n';
    }
}

std::vector<bench::EvalRecord> read_records(const fs::path& path, const std::optional<std::string>& task) {
    std::istringstream in(read_file(path));
    std::vector<bench::EvalRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) throw UserError(path.string() + ":" + std::to_string(lineno) + ": not valid JSON");
        try {
            auto rec = bench::EvalRecord::from_json(j);
            if (!task || rec.task_id == *task) out.push_back(std::move(rec));
        } catch (const UserError& e) {
            throw UserError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (out.empty()) throw UserError(path.string() + ": no records");
    return out;
}

} // namespace

std::string_view version() noexcept { return RAGBENCH_VERSION; }

void cmd_index(const IndexOptions& opts, std::ostream& out) {
    if (opts.name.empty()) throw UserError("--name is required");
    if (!fs::exists(opts.corpus)) throw UserError("corpus path not found: " + opts.corpus.string());
    const auto mode = corpus::ChunkingMode::parse(opts.chunking, opts.max_chars);
    auto registry = make_registry(opts.providers_config);
    const auto store = corpus::ingest_corpus(opts.corpus, opts.name, mode);
    const fs::path dir = opts.out.empty() ? fs::path("indexes") / opts.name : opts.out;
    auto info = write_indexes(store, dir, opts.embed_providers, opts.metrics, registry);
    info["chunking"] = mode.name();
    info["out"] = dir.generic_string();
    out << info.dump(2) << '\n';
}

void cmd_merge(const MergeOptions& opts, std::ostream& out) {
    if (opts.name.empty()) throw UserError("--name is required");
    if (opts.inputs.size() < 2) throw UserError("merge needs at least two index directories");
    std::vector<corpus::SnippetStore> stores;
    for (const auto& dir : opts.inputs) {
        if (!fs::is_directory(dir)) throw UserError("index directory not found: " + dir.string());
        stores.push_back(corpus::SnippetStore::load(dir));
    }
    const auto merged = corpus::merge_stores(stores, opts.name);
    auto registry = make_registry(opts.providers_config);
    const fs::path dir = opts.out.empty() ? fs::path("indexes") / opts.name : opts.out;
    auto info = write_indexes(merged, dir, opts.embed_providers, opts.metrics, registry);
    info["out"] = dir.generic_string();
    out << info.dump(2) << '\n';
}

void cmd_run(const RunOptions& opts, std::ostream& out) {
    const auto started = utc_now();
    if (opts.tasks.empty()) throw UserError("--task is required");
    if (!fs::exists(opts.config)) throw UserError("config file not found: " + opts.config.string());
    auto cfg = bench::RunConfig::load(opts.config);
    if (opts.k) cfg.k = *opts.k;
    if (opts.backend) cfg.backend = *opts.backend;
    if (opts.template_id) cfg.template_id = generation::parse_template_id(*opts.template_id);
    const bool sweep = !opts.ks.empty();
    if (sweep) cfg.k = opts.ks.back();
    cfg.validate();

    std::vector<bench::Task> tasks;
    ordered_json input_digests = ordered_json::object();
    input_digests["config"] = sha256_file(opts.config);
    for (const auto& path : opts.tasks) {
        tasks.push_back(bench::load_task(path, opts.dataset));
        input_digests["task:" + path.filename().string()] = sha256_file(path);
    }

    LoadedIndexes indexes;
    if (cfg.k > 0) {
        indexes = load_indexes(cfg);
        for (const auto& [name, digest] : indexes.digests.items()) input_digests["index:" + name] = digest;
    }
    auto backend = generation::make_backend(cfg.backend, cfg.backends);
    bench::EvalContext ctx{&cfg, indexes.set.get(), backend.get()};
    bench::check_ready(ctx);

    std::vector<std::pair<std::string, bench::TaskReport>> rows;
    ordered_json task_json = ordered_json::array();
    std::string records_jsonl;
    std::vector<double> accuracies;
    for (const auto& task : tasks) {
        if (sweep) {
            for (auto& point : bench::scaling_sweep(task, ctx, opts.ks)) {
                auto summary = point.report.summary_json();
                summary["k"] = point.k;
                task_json.push_back(std::move(summary));
                for (const auto& r : point.report.records) records_jsonl += r.to_json().dump() + "\n";
                rows.emplace_back(task.task_id + " k=" + std::to_string(point.k), std::move(point.report));
            }
        } else {
            auto report = bench::score_task(task.task_id, bench::evaluate_task(task, ctx));
            task_json.push_back(report.summary_json());
            for (const auto& r : report.records) records_jsonl += r.to_json().dump() + "\n";
            accuracies.push_back(report.accuracy);
            rows.emplace_back(task.task_id, std::move(report));
        }
    }

    ordered_json report;
    report["tool"] = "ragbench";
    report["version"] = version();
    report["config"] = cfg.to_json();
    report["config_hash"] = cfg.hash();
    report["tasks"] = std::move(task_json);
    if (!sweep) report["average"] = bench::round2(bench::average_score(accuracies));

    const fs::path dir = opts.out.empty() ? fs::path("runs") / cfg.hash().substr(0, 12) : opts.out;
    fs::create_directories(dir);
    write_file(dir / "report.json", report.dump(2) + "\n");
    write_file(dir / "records.jsonl", records_jsonl);

    ordered_json manifest;
    manifest["config_hash"] = cfg.hash();
    manifest["tool_version"] = version();
    manifest["kernel_isa"] = kernels::isa_name(kernels::active_kernels().isa);
    manifest["started_at"] = started;
    manifest["finished_at"] = utc_now();
    ordered_json overrides = ordered_json::object();
    if (opts.k) overrides["k"] = *opts.k;
    if (opts.backend) overrides["backend"] = *opts.backend;
    if (opts.template_id) overrides["template"] = *opts.template_id;
    if (sweep) overrides["ks"] = opts.ks;
    manifest["overrides"] = std::move(overrides);
    manifest["config"] = cfg.to_json();
    manifest["inputs"] = std::move(input_digests);
    manifest["outputs"] = {{"report", (dir / "report.json").generic_string()},
                           {"records", (dir / "records.jsonl").generic_string()},
                           {"manifest", (dir / "manifest.json").generic_string()}};
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");

    out << "config " << cfg.hash().substr(0, 12) << "  retriever " << cfg.retriever.id() << "  k=" << cfg.k
        << "  template " << generation::template_name(cfg.effective_template()) << "  backend " << cfg.backend
        << '\n';
    print_summary(out, rows);
    if (!sweep && accuracies.size() > 1) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", bench::round2(bench::average_score(accuracies)));
        out << "  average  " << buf << '\n';
    }
    out << "wrote " << dir.generic_string() << '\n';
}

void cmd_analyze(const AnalyzeOptions& opts, std::ostream& out) {
    if (opts.format != "json" && opts.format != "csv") throw UserError("--format must be json or csv");
    const auto records = read_records(opts.records, opts.task);
    std::string text;
    if (opts.mode == "scaling") {
        const auto rows = bench::scaling_curve(records, opts.ks);
        text = opts.format == "csv" ? bench::to_csv(rows, opts.baseline) : bench::to_json(rows, opts.baseline).dump(2) + "\n";
    } else if (opts.mode == "position") {
        if (opts.bins.empty()) throw UserError("position mode needs --bins");
        const auto bins = bench::position_analysis(records, opts.bins);
        text = opts.format == "csv" ? bench::to_csv(bins) : bench::to_json(bins).dump(2) + "\n";
    } else if (opts.mode == "proportion") {
        if (!opts.manifest) throw UserError("proportion mode needs --manifest");
        fs::path file = *opts.manifest;
        if (fs::is_directory(file)) file /= "manifest.json";
        const auto j = read_json_file(file);
        corpus::Manifest manifest;
        try {
            manifest = j.at("sources").get<corpus::Manifest>();
        } catch (const nlohmann::json::exception& e) {
            throw UserError(file.string() + ": " + e.what());
        }
        const auto shares = bench::source_proportion(records, manifest);
        text = opts.format == "csv" ? bench::to_csv(shares) : bench::to_json(shares).dump(2) + "\n";
    } else {
        throw UserError("unknown --mode " + opts.mode + " (scaling | position | proportion)");
    }
    if (opts.out) {
        write_file(*opts.out, text);
    } else {
        out << text;
    }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Retrieval-augmented QA benchmark engine", "ragbench"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);

    IndexOptions index;
    auto* index_cmd = app.add_subcommand("index", "chunk a corpus and build its indexes");
    index_cmd->add_option("--corpus", index.corpus, "corpus .jsonl file or directory")->required();
    index_cmd->add_option("--name", index.name, "corpus name (snippet id namespace)")->required();
    index_cmd->add_option("--chunking", index.chunking, "passthrough | recursive | hierarchical")->capture_default_str();
    index_cmd->add_option("--max-chars", index.max_chars, "recursive chunk limit")->capture_default_str();
    index_cmd->add_option("--embed-provider", index.embed_providers, "embedding provider id (repeatable)");
    index_cmd->add_option("--metric", index.metrics, "ip | l2 (repeatable)")->capture_default_str();
    index_cmd->add_option("--providers", index.providers_config, "embedding provider config JSON");
    index_cmd->add_option("--out", index.out, "output directory (default indexes/<name>)");

    MergeOptions merge;
    auto* merge_cmd = app.add_subcommand("merge", "merge index directories into one corpus");
    merge_cmd->add_option("--inputs", merge.inputs, "index directories")->required()->expected(2, -1);
    merge_cmd->add_option("--name", merge.name, "merged corpus name")->required();
    merge_cmd->add_option("--embed-provider", merge.embed_providers, "embedding provider id (repeatable)");
    merge_cmd->add_option("--metric", merge.metrics, "ip | l2 (repeatable)")->capture_default_str();
    merge_cmd->add_option("--providers", merge.providers_config, "embedding provider config JSON");
    merge_cmd->add_option("--out", merge.out, "output directory (default indexes/<name>)");

    RunOptions run;
    std::string run_ks;
    auto* run_cmd = app.add_subcommand("run", "evaluate tasks under a run config");
    run_cmd->add_option("--task", run.tasks, "task file (repeatable)")->required();
    run_cmd->add_option("--dataset", run.dataset, "dataset key inside a multi-dataset task file");
    run_cmd->add_option("--config", run.config, "run config JSON")->required();
    run_cmd->add_option("--k", run.k, "override snippet count");
    run_cmd->add_option("--backend", run.backend, "override backend id");
    run_cmd->add_option("--template", run.template_id, "override template id");
    run_cmd->add_option("--ks", run_ks, "scaling sweep, e.g. 1,2,4,8");
    run_cmd->add_option("--out", run.out, "output directory");

    AnalyzeOptions analyze;
    std::string bins, an_ks;
    auto* analyze_cmd = app.add_subcommand("analyze", "scaling, position or source-proportion tables");
    analyze_cmd->add_option("--records", analyze.records, "records.jsonl from a run")->required();
    analyze_cmd->add_option("--mode", analyze.mode, "scaling | position | proportion")->required();
    analyze_cmd->add_option("--bins", bins, "position bin upper edges, e.g. 8,16");
    analyze_cmd->add_option("--ks", an_ks, "k values to report, e.g. 1,2,4");
    analyze_cmd->add_option("--manifest", analyze.manifest, "store manifest.json or index directory");
    analyze_cmd->add_option("--baseline", analyze.baseline, "CoT accuracy to overlay");
    analyze_cmd->add_option("--task", analyze.task, "only records of this task id");
    analyze_cmd->add_option("--format", analyze.format, "json | csv")->capture_default_str();
    analyze_cmd->add_option("--out", analyze.out, "write here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*index_cmd) {
            cmd_index(index, out);
        } else if (*merge_cmd) {
            cmd_merge(merge, out);
        } else if (*run_cmd) {
            run.ks = parse_size_list(run_ks, "--ks");
            cmd_run(run, out);
        } else if (*analyze_cmd) {
            analyze.bins = parse_size_list(bins, "--bins");
            analyze.ks = parse_size_list(an_ks, "--ks");
            cmd_analyze(analyze, out);
        }
    } catch (const UserError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace ragbench::cli
