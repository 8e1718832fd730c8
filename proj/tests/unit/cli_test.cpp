#include "ragbench/cli/commands.hpp"

#include "toy_corpus.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace ragbench;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "ragbench");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

// A three-document corpus, a two-item task and a config that points at the index.
struct Workspace {
    testkit::TempDir dir{"cli"};

    Workspace() {
        write(dir.path() / "docs.jsonl",
              R"({"id": "d1", "title": "Asthma", "content": "Inhaled corticosteroids reduce airway inflammation."})"
              "\n"
              R"({"id": "d2", "title": "Diabetes", "content": "Type 2 diabetes is treated with metformin first line."})"
              "\n"
              R"({"id": "d3", "title": "Hypertension", "content": "ACE inhibitors lower blood pressure."})"
              "\n");
        write(dir.path() / "task.json", R"({"task_id": "toy", "kind": "literature", "items": [
            {"id": "q1", "question": "What is first line for type 2 diabetes?", "options": {"A": "metformin", "B": "insulin"}, "answer": "A", "gold_snippet_ids": ["pm:d2:0"]},
            {"id": "q2", "question": "Which drug class lowers blood pressure?", "options": {"A": "statins", "B": "ACE inhibitors"}, "answer": "B", "gold_snippet_ids": ["pm:d3:0"]}]})");
        write(dir.path() / "cfg.json",
              R"({"corpus": "pm", "index_dir": "idx", "retriever": {"kind": "fusion", "children": ["bm25", {"kind": "dense", "provider": "hash-32"}]}, "k": 2, "backend": "oracle_mock"})");
    }

    fs::path p(const std::string& name) const { return dir.path() / name; }

    CliResult index() const {
        return run({"index", "--corpus", p("docs.jsonl").string(), "--name", "pm", "--embed-provider", "hash-32",
                    "--out", p("idx").string()});
    }
};

} // namespace

TEST(Cli, IndexListsSnippetCount) {
    Workspace ws;
    const auto r = ws.index();
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("total"), 3);
    EXPECT_TRUE(fs::exists(ws.p("idx") / "lexical.bin"));
    EXPECT_TRUE(fs::exists(ws.p("idx") / "vectors.hash-32.ip.f32"));
}

TEST(Cli, IndexRerunGivesSameDigest) {
    Workspace ws;
    const auto a = ws.index();
    const auto b = ws.index();
    ASSERT_EQ(a.code, 0);
    ASSERT_EQ(b.code, 0);
    EXPECT_EQ(nlohmann::json::parse(a.out).at("store_digest"), nlohmann::json::parse(b.out).at("store_digest"));
}

TEST(Cli, MissingCorpusExitsTwo) {
    Workspace ws;
    const auto r = run({"index", "--corpus", ws.p("nope").string(), "--name", "x", "--out", ws.p("o").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("corpus path not found"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"run", "--task", "t.json"}).code, 2);
    EXPECT_EQ(run({"--version"}).code, 0);
}

TEST(Cli, RunIsDeterministic) {
    Workspace ws;
    ASSERT_EQ(ws.index().code, 0);
    const auto a = run({"run", "--task", ws.p("task.json").string(), "--config", ws.p("cfg.json").string(), "--backend",
                        "fixed_mock:A", "--out", ws.p("r1").string()});
    ASSERT_EQ(a.code, 0) << a.err;
    const auto b = run({"run", "--task", ws.p("task.json").string(), "--config", ws.p("cfg.json").string(), "--backend",
                        "fixed_mock:A", "--out", ws.p("r2").string()});
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(slurp(ws.p("r1") / "report.json"), slurp(ws.p("r2") / "report.json"));
    EXPECT_EQ(slurp(ws.p("r1") / "records.jsonl"), slurp(ws.p("r2") / "records.jsonl"));
    const auto report = nlohmann::json::parse(slurp(ws.p("r1") / "report.json"));
    EXPECT_EQ(report.at("tasks")[0].at("accuracy"), 50.0);
    const auto manifest = nlohmann::json::parse(slurp(ws.p("r1") / "manifest.json"));
    EXPECT_EQ(manifest.at("config_hash"), report.at("config_hash"));
    EXPECT_EQ(manifest.at("overrides").at("backend"), "fixed_mock:A");
    EXPECT_TRUE(manifest.at("inputs").contains("config"));
}

TEST(Cli, OracleRunFindsGold) {
    Workspace ws;
    ASSERT_EQ(ws.index().code, 0);
    const auto r = run({"run", "--task", ws.p("task.json").string(), "--config", ws.p("cfg.json").string(), "--out",
                        ws.p("r").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(slurp(ws.p("r") / "report.json")).at("average"), 100.0);
}

TEST(Cli, NoRetrievalWithMedragIsConfigError) {
    Workspace ws;
    ASSERT_EQ(ws.index().code, 0);
    const auto r = run({"run", "--task", ws.p("task.json").string(), "--config", ws.p("cfg.json").string(), "--k", "0",
                        "--template", "medrag", "--out", ws.p("r").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(fs::exists(ws.p("r")));
}

TEST(Cli, IndexMismatchStopsBeforeBackend) {
    Workspace ws;
    ASSERT_EQ(ws.index().code, 0);
    write(ws.p("cfg2.json"), R"({"corpus": "pm", "index_dir": "idx", "retriever": {"kind": "dense", "provider": "hash-64"}, "k": 2})");
    const auto r = run({"run", "--task", ws.p("task.json").string(), "--config", ws.p("cfg2.json").string(), "--out",
                        ws.p("r").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(fs::exists(ws.p("r")));
}

TEST(Cli, AnalyzeModes) {
    Workspace ws;
    ASSERT_EQ(ws.index().code, 0);
    ASSERT_EQ(run({"run", "--task", ws.p("task.json").string(), "--config", ws.p("cfg.json").string(), "--ks", "1,2",
                   "--out", ws.p("sweep").string()})
                  .code,
              0);
    const auto records = (ws.p("sweep") / "records.jsonl").string();

    auto r = run({"analyze", "--records", records, "--mode", "scaling", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.starts_with("k,n,n_correct"));

    r = run({"analyze", "--records", records, "--mode", "position", "--bins", "1,2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out).at("mode"), "position");

    r = run({"analyze", "--records", records, "--mode", "proportion", "--manifest", ws.p("idx").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out).at("sources")[0].at("retrieved_share"), 1.0);

    EXPECT_EQ(run({"analyze", "--records", records, "--mode", "position"}).code, 2);
    EXPECT_EQ(run({"analyze", "--records", records, "--mode", "histogram"}).code, 2);
}

TEST(Cli, AnalyzePositionWithoutGoldNamesField) {
    Workspace ws;
    write(ws.p("recs.jsonl"), R"({"item_id": "q1", "answer": "A", "correct": true})" "\n");
    const auto r = run({"analyze", "--records", ws.p("recs.jsonl").string(), "--mode", "position", "--bins", "8"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("gold_snippet_ids"), std::string::npos) << r.err;
}

TEST(Cli, ScalingWithoutKIsModeMismatch) {
    Workspace ws;
    write(ws.p("recs.jsonl"), R"({"item_id": "q1", "answer": "A", "correct": true})" "\n");
    EXPECT_EQ(run({"analyze", "--records", ws.p("recs.jsonl").string(), "--mode", "scaling"}).code, 2);
}

TEST(Cli, BinaryExitCodes) {
    Workspace ws;
    const std::string cmd = std::string(RAGBENCH_CLI_PATH) + " index --corpus " + ws.p("absent").string() +
                            " --name x --out " + ws.p("o").string() + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    ASSERT_TRUE(WIFEXITED(status));
    EXPECT_EQ(WEXITSTATUS(status), 2);
    const int ok = std::system((std::string(RAGBENCH_CLI_PATH) + " --version >/dev/null").c_str());
    EXPECT_EQ(WEXITSTATUS(ok), 0);
}
