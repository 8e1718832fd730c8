#pragma once

#include "ragbench/benchmark/evaluator.hpp"

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace ragbench::bench {

struct TaskReport {
    std::string task_id;
    std::size_t n = 0;
    std::size_t n_correct = 0;
    std::size_t n_failed = 0;       // backend gave up
    std::size_t n_parse_failed = 0; // completion had no usable letter
    double accuracy = 0.0;          // percent, unrounded
    double std = 0.0;               // percent, unrounded
    std::vector<EvalRecord> records;

    /// Summary fields with percentages rounded to 2 decimals; no records.
    nlohmann::ordered_json summary_json() const;
};

/// Percent rounded half away from zero to 2 decimals.
double round2(double percent) noexcept;

/// accuracy = 100 p, std = 100 sqrt(p (1 - p) / n) with p = n_correct / n.
double accuracy_percent(std::size_t n_correct, std::size_t n);
double std_percent(std::size_t n_correct, std::size_t n);

/// Throws UserError when `records` is empty.
TaskReport score_task(std::string task_id, std::vector<EvalRecord> records);

/// Unweighted mean of task accuracies. Throws UserError on an empty list.
double average_score(std::span<const double> accuracies);
double average_score(std::span<const TaskReport> reports);

/// "89.44 ± 0.93"
std::string format_cell(double accuracy, double std);

} // namespace ragbench::bench
