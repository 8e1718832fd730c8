#pragma once

#include "ragbench/benchmark/evaluator.hpp"
#include "ragbench/benchmark/report.hpp"
#include "ragbench/corpus/snippet_store.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace ragbench::bench {

// ---- snippet-count scaling ----

struct SweepPoint {
    std::size_t k;
    TaskReport report; // records carry k
};

/// One evaluation per k. Single retrievers rank once at max(ks) and truncate
/// per k; fusion retrievers rank per k because their child pools scale with k.
/// `ks` must be ascending, distinct and >= 1.
std::vector<SweepPoint> scaling_sweep(const Task& task, const EvalContext& ctx, std::span<const std::size_t> ks);

struct ScalingRow {
    std::size_t k;
    std::size_t n;
    std::size_t n_correct;
    double accuracy;
    double std;
    std::optional<double> gold_recall; // % of items with a gold id retrieved; needs gold ids
};

/// Groups records by their k field. Throws UserError if any record lacks k.
/// When `ks` is non-empty only those k values are kept, in that order.
std::vector<ScalingRow> scaling_curve(std::span<const EvalRecord> records, std::span<const std::size_t> ks = {});

// ---- gold-snippet position ----

struct PositionBin {
    std::string label; // "1-8", ">16", "absent"
    std::size_t lo = 0; // inclusive; 0 for the absent bin
    std::size_t hi = 0; // inclusive; 0 for the open overflow and absent bins
    std::size_t n = 0;
    std::size_t n_correct = 0;
    std::optional<double> accuracy; // null when n == 0
};

/// `edges` are ascending inclusive upper bounds: {8, 16} gives 1-8, 9-16,
/// then >16 and absent. Each record lands in the bin of its first gold
/// position. Throws UserError when a record has no gold_snippet_ids field.
std::vector<PositionBin> position_analysis(std::span<const EvalRecord> records, std::span<const std::size_t> edges);

// ---- source proportion ----

struct SourceShare {
    std::string source;
    std::size_t corpus_count = 0;
    double corpus_share = 0.0;
    std::size_t retrieved_count = 0;
    double retrieved_share = 0.0;
};

/// Corpus shares normalize the manifest; retrieved shares count the sources
/// of every retrieved_id (before the context budget is applied).
std::vector<SourceShare> source_proportion(std::span<const EvalRecord> records, const corpus::Manifest& manifest);

// ---- output ----

nlohmann::ordered_json to_json(std::span<const ScalingRow> rows, std::optional<double> baseline);
nlohmann::ordered_json to_json(std::span<const PositionBin> bins);
nlohmann::ordered_json to_json(std::span<const SourceShare> shares);
std::string to_csv(std::span<const ScalingRow> rows, std::optional<double> baseline);
std::string to_csv(std::span<const PositionBin> bins);
std::string to_csv(std::span<const SourceShare> shares);

} // namespace ragbench::bench
