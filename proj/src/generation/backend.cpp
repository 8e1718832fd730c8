#include "ragbench/generation/backend.hpp"

#include "ragbench/error.hpp"

#include <algorithm>
#include <charconv>

namespace ragbench::generation {

void GenerationParams::validate() const {
    if (!(temperature >= 0.0)) throw UserError("temperature must be >= 0");
    if (max_tokens <= 0) throw UserError("max_tokens must be positive");
    if (context_token_budget == 0) throw UserError("context_token_budget must be positive");
}

std::string mock_completion(std::string_view rationale, std::string_view letter) {
    nlohmann::ordered_json j;
    j["step_by_step_thinking"] = rationale;
    j["answer_choice"] = letter;
    // nlohmann prints compactly without spaces; keep the conventional layout.
    return "{\"step_by_step_thinking\": " + j["step_by_step_thinking"].dump() +
           ", \"answer_choice\": " + j["answer_choice"].dump() + "}";
}

FixedMockBackend::FixedMockBackend(std::string letter) : letter_(std::move(letter)), id_("fixed_mock:" + letter_) {
    if (letter_.empty()) throw UserError("fixed_mock needs a letter");
}

std::string FixedMockBackend::generate(const RenderedPrompt&, const GenerationParams&, const ItemContext&) {
    return mock_completion("fixed", letter_);
}

PositionalMockBackend::PositionalMockBackend(std::optional<std::size_t> window)
    : window_(window), id_(window ? "positional_mock:" + std::to_string(*window) : "oracle_mock") {
    if (window && *window == 0) throw UserError("positional_mock window must be >= 1");
}

std::string PositionalMockBackend::generate(const RenderedPrompt&, const GenerationParams&, const ItemContext& item) {
    const std::size_t limit = window_ ? std::min(*window_, item.included_ids.size()) : item.included_ids.size();
    bool hit = false;
    for (std::size_t i = 0; i < limit && !hit; ++i) {
        hit = std::find(item.gold_snippet_ids.begin(), item.gold_snippet_ids.end(), item.included_ids[i]) !=
              item.gold_snippet_ids.end();
    }
    if (hit) return mock_completion("gold snippet in context", item.answer);
    for (const auto& letter : item.valid_letters) {
        if (letter != item.answer) return mock_completion("gold snippet not in context", letter);
    }
    return mock_completion("gold snippet not in context", "");
}

std::unique_ptr<Backend> make_backend(std::string_view id, const nlohmann::json& configured) {
    if (id == "oracle_mock") return std::make_unique<OracleMockBackend>();
    if (id.starts_with("fixed_mock:")) return std::make_unique<FixedMockBackend>(std::string(id.substr(11)));
    if (id.starts_with("positional_mock:")) {
        const auto arg = id.substr(16);
        std::size_t w = 0;
        const auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), w);
        if (ec != std::errc{} || p != arg.data() + arg.size() || arg.empty()) {
            throw UserError("bad positional_mock window: " + std::string(arg));
        }
        return std::make_unique<PositionalMockBackend>(w);
    }
    const std::string key(id);
    if (configured.is_object() && configured.contains(key)) {
        const auto& j = configured.at(key);
        const auto kind = j.value("kind", std::string{"http_chat"});
        if (kind != "http_chat") throw UserError("backend " + key + ": unknown kind " + kind);
        return std::make_unique<HttpChatBackend>(HttpChatConfig::from_json(key, j));
    }
    throw UserError("unknown backend: " + key);
}

} // namespace ragbench::generation
