#pragma once

#include "ragbench/generation/prompt_template.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ragbench::bench {

struct QAItem {
    std::string item_id;
    std::string question;
    generation::Options options; // letter -> text
    std::string answer;
    std::optional<std::vector<std::string>> gold_snippet_ids;

    std::vector<std::string> letters() const;
};

enum class TaskKind { examination, literature };

std::string_view task_kind_name(TaskKind kind) noexcept;
TaskKind parse_task_kind(std::string_view name); // throws UserError

struct Task {
    std::string task_id;
    TaskKind kind = TaskKind::examination;
    std::vector<QAItem> items;
};

/// Options must be 2+ letters contiguous from "A"; the answer must be one
/// of them. Throws UserError.
void validate_item(const QAItem& item);

/// {"task_id", "kind", "items": [{"id", "question", "options", "answer",
/// "gold_snippet_ids"?}]}. Errors name the item index.
Task parse_task(const nlohmann::ordered_json& j);

/// Either the format above, or a dataset-keyed file
/// {"<dataset>": {"<item id>": {"question", "options", "answer", ...}}}, in
/// which case `dataset` picks the key (optional when there is only one).
Task load_task(const std::filesystem::path& path, const std::optional<std::string>& dataset = std::nullopt);

nlohmann::ordered_json task_to_json(const Task& task);

} // namespace ragbench::bench
