#include "ragbench/benchmark/evaluator.hpp"

#include "ragbench/error.hpp"
#include "ragbench/generation/context.hpp"
#include "ragbench/generation/prompt_template.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace ragbench::bench {

using generation::ParsePath;

nlohmann::ordered_json EvalRecord::to_json() const {
    nlohmann::ordered_json j;
    j["task_id"] = task_id;
    j["item_id"] = item_id;
    if (k) j["k"] = *k;
    j["retrieved_ids"] = retrieved_ids;
    j["included_ids"] = included_ids;
    if (gold_snippet_ids) j["gold_snippet_ids"] = *gold_snippet_ids;
    j["gold_positions"] = gold_positions;
    j["predicted"] = predicted ? nlohmann::ordered_json(*predicted) : nlohmann::ordered_json(nullptr);
    j["answer"] = answer;
    j["correct"] = correct;
    j["parse_path"] = generation::parse_path_name(parse_path);
    j["raw_len"] = raw_len;
    j["failed"] = failed;
    if (!error.empty()) j["error"] = error;
    if (context_budget_exhausted) j["context_budget_exhausted"] = true;
    return j;
}

EvalRecord EvalRecord::from_json(const nlohmann::json& j) {
    try {
        EvalRecord r;
        r.task_id = j.value("task_id", std::string{});
        r.item_id = j.at("item_id").get<std::string>();
        if (j.contains("k") && !j.at("k").is_null()) r.k = j.at("k").get<std::size_t>();
        r.retrieved_ids = j.value("retrieved_ids", std::vector<std::string>{});
        r.included_ids = j.value("included_ids", std::vector<std::string>{});
        if (j.contains("gold_snippet_ids")) r.gold_snippet_ids = j.at("gold_snippet_ids").get<std::vector<std::string>>();
        r.gold_positions = j.value("gold_positions", std::vector<std::size_t>{});
        if (j.contains("predicted") && !j.at("predicted").is_null()) r.predicted = j.at("predicted").get<std::string>();
        r.answer = j.value("answer", std::string{});
        r.correct = j.at("correct").get<bool>();
        r.parse_path = generation::parse_path_from_name(j.value("parse_path", std::string{"failed"}));
        r.raw_len = j.value("raw_len", std::size_t{0});
        r.failed = j.value("failed", false);
        r.error = j.value("error", std::string{});
        r.context_budget_exhausted = j.value("context_budget_exhausted", false);
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw UserError(std::string("bad eval record: ") + e.what());
    }
}

std::vector<std::size_t> gold_positions(std::span<const std::string> included, std::span<const std::string> gold) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < included.size(); ++i) {
        if (std::find(gold.begin(), gold.end(), included[i]) != gold.end()) out.push_back(i + 1);
    }
    return out;
}

std::uint64_t item_seed(std::uint64_t run_seed, const std::string& item_id) noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : item_id) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::uint64_t z = run_seed + 0x9e3779b97f4a7c15ull * (h | 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

void check_ready(const EvalContext& ctx) {
    if (!ctx.config || !ctx.backend) throw Error("evaluation context is incomplete");
    ctx.config->validate();
    if (ctx.config->k == 0) return;
    if (!ctx.indexes) throw UserError("k > 0 but no indexes were loaded");
    ctx.indexes->require(ctx.config->retriever);
    if (!ctx.config->corpus_name.empty() && ctx.config->corpus_name != ctx.indexes->store().name()) {
        throw UserError("config names corpus " + ctx.config->corpus_name + " but the index holds " +
                        ctx.indexes->store().name());
    }
}

retrieval::Ranking retrieve_for_item(const QAItem& item, const EvalContext& ctx, std::size_t k) {
    if (k == 0) return retrieval::Ranking{ctx.config->retriever.id(), retrieval::ScoreOrder::descending, {}};
    if (!ctx.indexes) throw UserError("k > 0 but no indexes were loaded");
    return retrieval::retrieve_ranking(item.question, *ctx.indexes, ctx.config->retriever, k);
}

EvalRecord evaluate_with_ranking(const QAItem& item, const retrieval::Ranking& ranking, std::size_t k,
                                 const EvalContext& ctx) {
    const RunConfig& cfg = *ctx.config;
    EvalRecord rec;
    rec.item_id = item.item_id;
    rec.answer = item.answer;
    rec.gold_snippet_ids = item.gold_snippet_ids;

    const auto truncated = ranking.truncated(k);
    rec.retrieved_ids = truncated.ids();

    const auto& tmpl = generation::get_template(cfg.effective_template());
    generation::RenderedPrompt prompt;
    if (generation::uses_context(tmpl.id)) {
        std::vector<const corpus::Snippet*> snippets;
        for (const auto& r : retrieval::resolve(truncated, ctx.indexes->store())) snippets.push_back(r.snippet);

        // Whatever the prompt spends outside the context comes off the budget.
        const auto frame = generation::render_prompt(tmpl, std::string_view{}, item.question, item.options);
        const std::size_t frame_tokens = generation::estimate_tokens(frame.full_text());
        const std::size_t budget =
            cfg.generation.context_token_budget > frame_tokens ? cfg.generation.context_token_budget - frame_tokens : 0;

        auto order = cfg.context_order;
        if (order.kind == generation::ContextOrder::Kind::shuffled) order.seed = item_seed(order.seed, item.item_id);
        auto assembled = generation::assemble_context(snippets, budget, order);
        rec.included_ids = std::move(assembled.included_ids);
        rec.context_budget_exhausted = assembled.budget_exhausted;
        prompt = generation::render_prompt(tmpl, assembled.text, item.question, item.options);
    } else {
        prompt = generation::render_prompt(tmpl, std::nullopt, item.question, item.options);
    }
    if (item.gold_snippet_ids) rec.gold_positions = gold_positions(rec.included_ids, *item.gold_snippet_ids);

    // A question too long for the budget is not sent at all.
    const std::size_t prompt_tokens = generation::estimate_tokens(prompt.full_text());
    if (prompt_tokens > cfg.generation.context_token_budget) {
        rec.failed = true;
        rec.context_budget_exhausted = true;
        rec.error = "prompt needs ~" + std::to_string(prompt_tokens) + " tokens, over context_token_budget " +
                    std::to_string(cfg.generation.context_token_budget);
        return rec;
    }

    const auto letters = item.letters();
    generation::ItemContext ictx{item.answer, letters, item.gold_snippet_ids.value_or(std::vector<std::string>{}),
                                 rec.included_ids};
    std::string raw;
    try {
        raw = ctx.backend->generate(prompt, cfg.generation, ictx);
    } catch (const BackendError& e) {
        rec.failed = true;
        rec.error = e.what();
        return rec;
    }
    rec.raw_len = raw.size();
    const auto parsed = generation::parse_answer(raw, letters);
    rec.parse_path = parsed.path;
    rec.predicted = parsed.choice;
    rec.correct = parsed.choice && *parsed.choice == item.answer;
    return rec;
}

EvalRecord evaluate_item(const QAItem& item, const EvalContext& ctx) {
    const auto ranking = retrieve_for_item(item, ctx, ctx.config->k);
    return evaluate_with_ranking(item, ranking, ctx.config->k, ctx);
}

void parallel_for(std::size_t n, std::size_t width, const std::function<void(std::size_t)>& fn) {
    width = std::max<std::size_t>(1, std::min(width, n));
    if (width == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr first;
    std::mutex mu;
    {
        std::vector<std::jthread> workers;
        for (std::size_t w = 0; w < width; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < n && !stop; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(mu);
                        if (!first) first = std::current_exception();
                        stop = true;
                    }
                }
            });
        }
    }
    if (first) std::rethrow_exception(first);
}

std::vector<EvalRecord> evaluate_task(const Task& task, const EvalContext& ctx) {
    check_ready(ctx);
    std::vector<EvalRecord> out(task.items.size());
    parallel_for(task.items.size(), ctx.backend->max_in_flight(), [&](std::size_t i) {
        out[i] = evaluate_item(task.items[i], ctx);
        out[i].task_id = task.task_id;
    });
    return out;
}

} // namespace ragbench::bench
