#include "ragbench/benchmark/report.hpp"

#include "ragbench/error.hpp"

#include <cmath>
#include <cstdio>

namespace ragbench::bench {

double round2(double percent) noexcept { return std::round(percent * 100.0) / 100.0; }

double accuracy_percent(std::size_t n_correct, std::size_t n) {
    if (n == 0) throw UserError("accuracy of an empty task");
    return 100.0 * static_cast<double>(n_correct) / static_cast<double>(n);
}

double std_percent(std::size_t n_correct, std::size_t n) {
    if (n == 0) throw UserError("std of an empty task");
    const double p = static_cast<double>(n_correct) / static_cast<double>(n);
    return 100.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

TaskReport score_task(std::string task_id, std::vector<EvalRecord> records) {
    if (records.empty()) throw UserError("cannot score task " + task_id + " with no records");
    TaskReport r;
    r.task_id = std::move(task_id);
    r.n = records.size();
    for (const auto& rec : records) {
        r.n_correct += rec.correct ? 1 : 0;
        r.n_failed += rec.failed ? 1 : 0;
        r.n_parse_failed += (!rec.failed && rec.parse_path == generation::ParsePath::failed) ? 1 : 0;
    }
    r.accuracy = accuracy_percent(r.n_correct, r.n);
    r.std = std_percent(r.n_correct, r.n);
    r.records = std::move(records);
    return r;
}

double average_score(std::span<const double> accuracies) {
    if (accuracies.empty()) throw UserError("average of no tasks");
    double sum = 0.0;
    for (double a : accuracies) sum += a;
    return sum / static_cast<double>(accuracies.size());
}

double average_score(std::span<const TaskReport> reports) {
    std::vector<double> acc;
    for (const auto& r : reports) acc.push_back(r.accuracy);
    return average_score(acc);
}

nlohmann::ordered_json TaskReport::summary_json() const {
    nlohmann::ordered_json j;
    j["task_id"] = task_id;
    j["n"] = n;
    j["n_correct"] = n_correct;
    j["n_failed"] = n_failed;
    j["n_parse_failed"] = n_parse_failed;
    j["accuracy"] = round2(accuracy);
    j["std"] = round2(std);
    return j;
}

std::string format_cell(double accuracy, double std) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f ± %.2f", round2(accuracy), round2(std));
    return buf;
}

} // namespace ragbench::bench
