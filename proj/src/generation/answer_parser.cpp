#include "ragbench/generation/answer_parser.hpp"

#include "ragbench/error.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include <json.hpp>

namespace ragbench::generation {
namespace {

bool is_valid(std::string_view letter, std::span<const std::string> valid) {
    return std::find(valid.begin(), valid.end(), letter) != valid.end();
}

// Accepts "B", " B ", "B.", "(B)", "B. some text", "B: text".
std::optional<std::string> letter_of(std::string_view v, std::span<const std::string> valid) {
    std::size_t i = 0;
    while (i < v.size() && (std::isspace(static_cast<unsigned char>(v[i])) || v[i] == '(' || v[i] == '[')) ++i;
    if (i >= v.size() || !std::isupper(static_cast<unsigned char>(v[i]))) return std::nullopt;
    if (i + 1 < v.size() && std::isalnum(static_cast<unsigned char>(v[i + 1]))) return std::nullopt;
    std::string letter(1, v[i]);
    if (!is_valid(letter, valid)) return std::nullopt;
    return letter;
}

std::optional<ParsedAnswer> from_json_object(const nlohmann::json& j, std::span<const std::string> valid,
                                             ParsePath path) {
    if (!j.is_object()) return std::nullopt;
    auto it = j.find("answer_choice");
    if (it == j.end() || !it->is_string()) return std::nullopt;
    auto letter = letter_of(it->get_ref<const std::string&>(), valid);
    if (!letter) return std::nullopt;
    ParsedAnswer out;
    out.choice = std::move(letter);
    out.path = path;
    auto r = j.find("step_by_step_thinking");
    if (r != j.end() && r->is_string()) out.rationale = r->get<std::string>();
    return out;
}

// End (exclusive) of the balanced {...} starting at `open`, honouring strings.
std::optional<std::size_t> balanced_end(std::string_view s, std::size_t open) {
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = open; i < s.size(); ++i) {
        const char c = s[i];
        if (in_string) {
            if (c == '\\') {
                ++i;
            } else if (c == '"') {
                in_string = false;
            }
            continue;
        }
        if (c == '"') {
            in_string = true;
        } else if (c == '{') {
            ++depth;
        } else if (c == '}') {
            if (--depth == 0) return i + 1;
        }
    }
    return std::nullopt;
}

} // namespace

std::string_view parse_path_name(ParsePath p) noexcept {
    switch (p) {
    case ParsePath::strict_json: return "strict_json";
    case ParsePath::json_in_text: return "json_in_text";
    case ParsePath::letter_regex: return "letter_regex";
    case ParsePath::failed: return "failed";
    }
    return "failed";
}

ParsePath parse_path_from_name(std::string_view name) {
    for (auto p : {ParsePath::strict_json, ParsePath::json_in_text, ParsePath::letter_regex, ParsePath::failed}) {
        if (parse_path_name(p) == name) return p;
    }
    throw UserError("unknown parse path: " + std::string(name));
}

ParsedAnswer parse_answer(std::string_view raw, std::span<const std::string> valid_letters) noexcept {
    try {
        const auto strict = nlohmann::json::parse(raw.begin(), raw.end(), nullptr, false);
        if (!strict.is_discarded()) {
            if (auto a = from_json_object(strict, valid_letters, ParsePath::strict_json)) return *a;
        }

        for (std::size_t open = raw.find('{'); open != std::string_view::npos; open = raw.find('{', open + 1)) {
            const auto end = balanced_end(raw, open);
            if (!end) continue;
            const auto candidate = raw.substr(open, *end - open);
            const auto j = nlohmann::json::parse(candidate.begin(), candidate.end(), nullptr, false);
            if (j.is_discarded()) continue;
            if (auto a = from_json_object(j, valid_letters, ParsePath::json_in_text)) return *a;
        }

        static const std::regex patterns[] = {
            std::regex(R"re(answer_choice"?\s*:\s*"?\(?([A-Z])\b)re"),
            std::regex(R"re((?:^|[^A-Za-z])[Aa]nswer\s*:\s*\(?([A-Z])\b)re"),
        };
        const std::string text(raw);
        for (const auto& re : patterns) {
            for (auto it = std::sregex_iterator(text.begin(), text.end(), re); it != std::sregex_iterator(); ++it) {
                const std::string letter = (*it)[1].str();
                if (is_valid(letter, valid_letters)) {
                    ParsedAnswer out;
                    out.choice = letter;
                    out.path = ParsePath::letter_regex;
                    return out;
                }
            }
        }
    } catch (...) {
        // fall through to failed
    }
    return {};
}

} // namespace ragbench::generation
