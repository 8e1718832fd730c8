#pragma once

#include "ragbench/benchmark/run_config.hpp"
#include "ragbench/benchmark/task.hpp"
#include "ragbench/generation/answer_parser.hpp"
#include "ragbench/generation/backend.hpp"
#include "ragbench/retrieval/retriever.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace ragbench::bench {

struct EvalRecord {
    std::string task_id;
    std::string item_id;
    std::optional<std::size_t> k; // set by sweeps
    std::vector<std::string> retrieved_ids;
    std::vector<std::string> included_ids;
    std::optional<std::vector<std::string>> gold_snippet_ids; // copied from the item when it has them
    std::vector<std::size_t> gold_positions;                  // 1-based, within included_ids
    std::optional<std::string> predicted;
    std::string answer;
    bool correct = false;
    generation::ParsePath parse_path = generation::ParsePath::failed;
    std::size_t raw_len = 0;
    bool failed = false; // backend gave up; counted as incorrect
    std::string error;
    bool context_budget_exhausted = false;

    nlohmann::ordered_json to_json() const;
    static EvalRecord from_json(const nlohmann::json& j); // throws UserError

    friend bool operator==(const EvalRecord&, const EvalRecord&) = default;
};

/// 1-based positions of gold ids within `included`, ascending.
std::vector<std::size_t> gold_positions(std::span<const std::string> included, std::span<const std::string> gold);

/// Per-item seed for shuffled context order.
std::uint64_t item_seed(std::uint64_t run_seed, const std::string& item_id) noexcept;

/// Everything an item evaluation needs besides the item itself.
struct EvalContext {
    const RunConfig* config = nullptr;
    const retrieval::IndexSet* indexes = nullptr; // may be null when k == 0
    generation::Backend* backend = nullptr;
};

/// Context assembly, prompting, generation and parsing for an item whose
/// ranking is already known. `ranking` is truncated to `k`.
EvalRecord evaluate_with_ranking(const QAItem& item, const retrieval::Ranking& ranking, std::size_t k,
                                 const EvalContext& ctx);

/// Full pipeline. Retrieval sees only the question text, never the options.
EvalRecord evaluate_item(const QAItem& item, const EvalContext& ctx);

/// Retrieval alone, as used by evaluate_item. Empty when k == 0.
retrieval::Ranking retrieve_for_item(const QAItem& item, const EvalContext& ctx, std::size_t k);

/// Evaluates items concurrently, up to the backend's in-flight bound.
/// Records come back in item order.
std::vector<EvalRecord> evaluate_task(const Task& task, const EvalContext& ctx);

/// Checks config/index consistency before any backend call. Throws UserError.
void check_ready(const EvalContext& ctx);

/// Runs `fn(i)` for i in [0, n) on up to `width` threads. The first
/// exception is rethrown after all workers stop.
void parallel_for(std::size_t n, std::size_t width, const std::function<void(std::size_t)>& fn);

} // namespace ragbench::bench
