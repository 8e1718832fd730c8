#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace ragbench::generation {

enum class ParsePath { strict_json, json_in_text, letter_regex, failed };

std::string_view parse_path_name(ParsePath p) noexcept;
ParsePath parse_path_from_name(std::string_view name); // throws UserError

struct ParsedAnswer {
    std::optional<std::string> choice; // always one of the valid letters
    std::optional<std::string> rationale;
    ParsePath path = ParsePath::failed;
};

/// Tries, in order: the whole text as JSON with "answer_choice"; the first
/// balanced JSON object in the text that has one; a regex for
/// `answer_choice": "<L>` or a standalone `Answer: <L>`. Never throws.
ParsedAnswer parse_answer(std::string_view raw, std::span<const std::string> valid_letters) noexcept;

} // namespace ragbench::generation
