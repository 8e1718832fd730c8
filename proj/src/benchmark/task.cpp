#include "ragbench/benchmark/task.hpp"

#include "ragbench/digest.hpp"
#include "ragbench/error.hpp"

#include <set>

namespace ragbench::bench {
namespace {

QAItem parse_item(const std::string& id, const nlohmann::ordered_json& j) {
    QAItem item;
    item.item_id = id;
    item.question = j.at("question").get<std::string>();
    const auto& opts = j.at("options");
    if (!opts.is_object()) throw UserError("\"options\" must be an object of letter -> text");
    for (const auto& [letter, text] : opts.items()) item.options[letter] = text.get<std::string>();
    item.answer = j.at("answer").get<std::string>();
    if (j.contains("gold_snippet_ids") && !j.at("gold_snippet_ids").is_null()) {
        item.gold_snippet_ids = j.at("gold_snippet_ids").get<std::vector<std::string>>();
    }
    validate_item(item);
    return item;
}

std::string id_string(const nlohmann::ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

TaskKind kind_for_dataset(std::string_view name) {
    return name == "pubmedqa" || name == "bioasq" ? TaskKind::literature : TaskKind::examination;
}

} // namespace

std::vector<std::string> QAItem::letters() const {
    std::vector<std::string> out;
    for (const auto& [letter, text] : options) out.push_back(letter);
    return out;
}

std::string_view task_kind_name(TaskKind kind) noexcept {
    return kind == TaskKind::literature ? "literature" : "examination";
}

TaskKind parse_task_kind(std::string_view name) {
    if (name == "examination") return TaskKind::examination;
    if (name == "literature") return TaskKind::literature;
    throw UserError("unknown task kind: " + std::string(name));
}

void validate_item(const QAItem& item) {
    if (item.item_id.empty()) throw UserError("empty item id");
    if (item.question.empty()) throw UserError("item " + item.item_id + ": empty question");
    if (item.options.size() < 2) throw UserError("item " + item.item_id + ": needs at least two options");
    char expected = 'A';
    for (const auto& [letter, text] : item.options) {
        if (letter.size() != 1 || letter[0] != expected) {
            throw UserError("item " + item.item_id + ": option letters must be contiguous from A");
        }
        ++expected;
    }
    if (!item.options.contains(item.answer)) {
        throw UserError("item " + item.item_id + ": answer \"" + item.answer + "\" is not an option letter");
    }
}

Task parse_task(const nlohmann::ordered_json& j) {
    Task task;
    try {
        task.task_id = j.at("task_id").get<std::string>();
        task.kind = parse_task_kind(j.value("kind", std::string{"examination"}));
    } catch (const nlohmann::ordered_json::exception& e) {
        throw UserError(std::string("task header: ") + e.what());
    }
    const auto it = j.find("items");
    if (it == j.end() || !it->is_array()) throw UserError("task file needs an \"items\" array");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < it->size(); ++i) {
        try {
            const auto& rec = (*it)[i];
            auto item = parse_item(id_string(rec.at("id")), rec);
            if (!seen.insert(item.item_id).second) throw UserError("duplicate item id " + item.item_id);
            task.items.push_back(std::move(item));
        } catch (const nlohmann::ordered_json::exception& e) {
            throw UserError("item " + std::to_string(i) + ": " + e.what());
        } catch (const UserError& e) {
            throw UserError("item " + std::to_string(i) + ": " + e.what());
        }
    }
    if (task.items.empty()) throw UserError("task " + task.task_id + " has no items");
    return task;
}

Task load_task(const std::filesystem::path& path, const std::optional<std::string>& dataset) {
    const auto text = read_file(path);
    const auto j = nlohmann::ordered_json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw UserError(path.string() + ": not a JSON object");
    try {
        if (j.contains("items")) return parse_task(j);

        std::string key;
        if (dataset) {
            key = *dataset;
            if (!j.contains(key)) throw UserError("dataset " + key + " not found");
        } else if (j.size() == 1) {
            key = j.begin().key();
        } else {
            throw UserError("file holds several datasets; choose one");
        }
        Task task;
        task.task_id = key;
        task.kind = kind_for_dataset(key);
        std::size_t i = 0;
        for (const auto& [id, rec] : j.at(key).items()) {
            try {
                task.items.push_back(parse_item(id, rec));
            } catch (const nlohmann::ordered_json::exception& e) {
                throw UserError("item " + std::to_string(i) + ": " + e.what());
            } catch (const UserError& e) {
                throw UserError("item " + std::to_string(i) + ": " + e.what());
            }
            ++i;
        }
        if (task.items.empty()) throw UserError("task " + task.task_id + " has no items");
        return task;
    } catch (const UserError& e) {
        throw UserError(path.string() + ": " + e.what());
    }
}

nlohmann::ordered_json task_to_json(const Task& task) {
    nlohmann::ordered_json items = nlohmann::ordered_json::array();
    for (const auto& item : task.items) {
        nlohmann::ordered_json rec;
        rec["id"] = item.item_id;
        rec["question"] = item.question;
        nlohmann::ordered_json opts = nlohmann::ordered_json::object();
        for (const auto& [letter, text] : item.options) opts[letter] = text;
        rec["options"] = std::move(opts);
        rec["answer"] = item.answer;
        if (item.gold_snippet_ids) rec["gold_snippet_ids"] = *item.gold_snippet_ids;
        items.push_back(std::move(rec));
    }
    nlohmann::ordered_json out;
    out["task_id"] = task.task_id;
    out["kind"] = task_kind_name(task.kind);
    out["items"] = std::move(items);
    return out;
}

} // namespace ragbench::bench
