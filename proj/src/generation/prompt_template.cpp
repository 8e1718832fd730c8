#include "ragbench/generation/prompt_template.hpp"

#include "ragbench/error.hpp"

namespace ragbench::generation {
namespace {

constexpr std::string_view kCotSystem =
    R"(You are a helpful medical expert, and your task is to answer a multi-choice medical question. Please first think step-by-step and then choose the answer from the provided options. Organize your output in a json formatted as Dict{"step_by_step_thinking": Str(explanation), "answer_choice": Str{A/B/C/...}}. Your responses will be used for research purposes only, so please have a definite answer.)";

constexpr std::string_view kMedragSystem =
    R"(You are a helpful medical expert, and your task is to answer a multi-choice medical question using the relevant documents. Please first think step-by-step and then choose the answer from the provided options. Organize your output in a json formatted as Dict{"step_by_step_thinking": Str(explanation), "answer_choice": Str{A/B/C/...}}. Your responses will be used for research purposes only, so please have a definite answer.)";

constexpr std::string_view kCotUser = R"(Here is the question:
{{question}}

Here are the potential choices:
{{options}}

Please think step-by-step and generate your output in json:)";

constexpr std::string_view kMedragUser = R"(Here are the relevant documents:
{{context}}

Here is the question:
{{question}}

Here are the potential choices:
{{options}}

Please think step-by-step and generate your output in json:)";

// In the no-context variant the first "### User:" runs into the following
// line; the context variant breaks the line. Both are kept as published.
constexpr std::string_view kCotPseudo1 =
    R"(You are a helpful medical expert, and your task is to answer a multi-choice medical question. Please first think step-by-step and then choose the answer from the provided options. Organize your output in a json formatted as Dict{"step_by_step_thinking": Str(explanation), "answer_choice": Str{A/B/C/...}}. Your responses will be used for research purposes only, so please have a definite answer.

### User: Here is the question:
...

Here are the potential choices:
A. ...
B. ...
C. ...
D. ...
X. ...

Please think step-by-step and generate your output in json.

### Assistant:
{"step_by_step_thinking": ..., "answer_choice": "X"}

### User:
Here is the question:
{{question}}

Here are the potential choices:
{{options}}

Please think step-by-step and generate your output in json.

### Assistant:)";

constexpr std::string_view kMedragPseudo1 =
    R"(You are a helpful medical expert, and your task is to answer a multi-choice medical question using the relevant documents. Please first think step-by-step and then choose the answer from the provided options. Organize your output in a json formatted as Dict{"step_by_step_thinking": Str(explanation), "answer_choice": Str{A/B/C/...}}. Your responses will be used for research purposes only, so please have a definite answer.

Here are the relevant documents:
{{context}}

### User:
Here is the question:
...

Here are the potential choices:
A. ...
B. ...
C. ...
D. ...
X. ...

Please think step-by-step and generate your output in json.

### Assistant:
{"step_by_step_thinking": ..., "answer_choice": "X"}

### User:
Here is the question:
{{question}}

Here are the potential choices:
{{options}}

Please think step-by-step and generate your output in json.

### Assistant:)";

constexpr PromptTemplate kTemplates[] = {
    {TemplateId::cot, kCotSystem, kCotUser},
    {TemplateId::medrag, kMedragSystem, kMedragUser},
    {TemplateId::cot_pseudo1, {}, kCotPseudo1},
    {TemplateId::medrag_pseudo1, {}, kMedragPseudo1},
};

std::string substitute(std::string_view pattern, std::string_view context, std::string_view question,
                       std::string_view options) {
    std::string out;
    out.reserve(pattern.size() + context.size() + question.size() + options.size());
    std::size_t pos = 0;
    while (pos < pattern.size()) {
        const auto open = pattern.find("{{", pos);
        if (open == std::string_view::npos) break;
        const auto close = pattern.find("}}", open + 2);
        if (close == std::string_view::npos) break;
        const auto name = pattern.substr(open + 2, close - open - 2);
        std::string_view value;
        if (name == "context") {
            value = context;
        } else if (name == "question") {
            value = question;
        } else if (name == "options") {
            value = options;
        } else {
            out.append(pattern.substr(pos, close + 2 - pos));
            pos = close + 2;
            continue;
        }
        out.append(pattern.substr(pos, open - pos));
        out.append(value);
        pos = close + 2;
    }
    out.append(pattern.substr(pos));
    return out;
}

} // namespace

std::string_view template_name(TemplateId id) noexcept {
    switch (id) {
    case TemplateId::cot: return "cot";
    case TemplateId::medrag: return "medrag";
    case TemplateId::cot_pseudo1: return "cot_pseudo1";
    case TemplateId::medrag_pseudo1: return "medrag_pseudo1";
    }
    return "?";
}

TemplateId parse_template_id(std::string_view name) {
    for (const auto& t : kTemplates) {
        if (template_name(t.id) == name) return t.id;
    }
    throw UserError("unknown template id: " + std::string(name));
}

bool uses_context(TemplateId id) noexcept { return id == TemplateId::medrag || id == TemplateId::medrag_pseudo1; }

bool is_single_text(TemplateId id) noexcept { return id == TemplateId::cot_pseudo1 || id == TemplateId::medrag_pseudo1; }

const PromptTemplate& get_template(TemplateId id) noexcept { return kTemplates[static_cast<int>(id)]; }

std::string format_options(const Options& options) {
    std::string out;
    for (const auto& [letter, text] : options) {
        if (!out.empty()) out += '\n';
        out += letter;
        out += ". ";
        out += text;
    }
    return out;
}

std::vector<ChatMessage> RenderedPrompt::messages() const {
    std::vector<ChatMessage> out;
    if (system) out.push_back({"system", *system});
    out.push_back({"user", user});
    return out;
}

std::string RenderedPrompt::full_text() const {
    if (!system) return user;
    return *system + "\n\n" + user;
}

RenderedPrompt render_prompt(const PromptTemplate& tmpl, std::optional<std::string_view> context,
                             std::string_view question, const Options& options) {
    if (question.empty()) throw UserError("missing value for slot {{question}}");
    if (options.empty()) throw UserError("missing value for slot {{options}}");
    if (uses_context(tmpl.id) && !context) throw UserError("missing value for slot {{context}}");

    const std::string opts = format_options(options);
    const std::string_view ctx = uses_context(tmpl.id) ? *context : std::string_view{};
    RenderedPrompt out;
    if (!is_single_text(tmpl.id)) out.system = std::string(tmpl.system_text);
    out.user = substitute(tmpl.body_pattern, ctx, question, opts);
    return out;
}

} // namespace ragbench::generation
