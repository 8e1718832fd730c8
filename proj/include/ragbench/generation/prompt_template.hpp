#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ragbench::generation {

/// cot / medrag: system + user message pair, without / with retrieved context.
/// *_pseudo1: single completion-style text carrying a fixed dummy one-shot
/// exchange, for base models that do not follow system prompts.
enum class TemplateId { cot, medrag, cot_pseudo1, medrag_pseudo1 };

std::string_view template_name(TemplateId id) noexcept;
TemplateId parse_template_id(std::string_view name); // throws UserError

bool uses_context(TemplateId id) noexcept;
bool is_single_text(TemplateId id) noexcept;

struct PromptTemplate {
    TemplateId id;
    std::string_view system_text; // empty for single-text templates
    std::string_view body_pattern; // slots: {{context}}, {{question}}, {{options}}
};

const PromptTemplate& get_template(TemplateId id) noexcept;

/// Option letter -> option text. std::map keeps letters in order.
using Options = std::map<std::string, std::string>;

/// "A. <text>" lines joined by '\n'.
std::string format_options(const Options& options);

struct ChatMessage {
    std::string role;
    std::string content;

    friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct RenderedPrompt {
    std::optional<std::string> system; // absent for single-text templates
    std::string user;

    /// Chat messages for the HTTP backend.
    std::vector<ChatMessage> messages() const;

    /// Everything the model sees: system, a blank line, then the user text.
    std::string full_text() const;
};

/// Substitutes the slots in one pass; substituted values are never rescanned.
/// Throws UserError when the question or options are empty, or when a
/// context template receives no context. Context is ignored by cot templates.
RenderedPrompt render_prompt(const PromptTemplate& tmpl, std::optional<std::string_view> context,
                             std::string_view question, const Options& options);

} // namespace ragbench::generation
