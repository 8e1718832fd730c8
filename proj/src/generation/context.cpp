#include "ragbench/generation/context.hpp"

#include "ragbench/error.hpp"
#include "ragbench/retrieval/tokenizer.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>

namespace ragbench::generation {
namespace {

std::size_t inflate(std::size_t whitespace_tokens) noexcept {
    // ceil(1.3 * n) in integers
    return (13 * whitespace_tokens + 9) / 10;
}

} // namespace

ContextOrder ContextOrder::parse(std::string_view text, std::uint64_t default_seed) {
    ContextOrder o;
    if (text == "rank_asc") return o;
    if (text == "rank_desc") {
        o.kind = Kind::rank_desc;
        return o;
    }
    if (text.starts_with("shuffled")) {
        o.kind = Kind::shuffled;
        o.seed = default_seed;
        auto rest = text.substr(8);
        if (rest.empty()) return o;
        if (rest.front() == ':' || rest.front() == '(') {
            rest.remove_prefix(1);
            if (!rest.empty() && rest.back() == ')') rest.remove_suffix(1);
            const auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), o.seed);
            if (ec == std::errc{} && p == rest.data() + rest.size() && !rest.empty()) return o;
        }
    }
    throw UserError("unknown context order: " + std::string(text));
}

std::string ContextOrder::name() const {
    switch (kind) {
    case Kind::rank_asc: return "rank_asc";
    case Kind::rank_desc: return "rank_desc";
    case Kind::shuffled: return "shuffled:" + std::to_string(seed);
    }
    return {};
}

std::size_t estimate_tokens(std::string_view text) noexcept {
    return inflate(retrieval::count_whitespace_tokens(text));
}

std::string render_snippet(std::size_t position, const corpus::Snippet& snippet) {
    std::string out = "Document [" + std::to_string(position) + "] (Title: ";
    out += snippet.title;
    out += ") ";
    out += snippet.content;
    return out;
}

AssembledContext assemble_context(std::span<const corpus::Snippet* const> ranked, std::size_t budget,
                                  const ContextOrder& order) {
    AssembledContext out;
    if (ranked.empty()) return out;

    // Rendered token counts do not depend on the position number, and the
    // newline joiner adds none, so the prefix can be chosen before ordering.
    std::size_t kept = 0;
    std::size_t words = 0;
    for (const auto* s : ranked) {
        const std::size_t w = retrieval::count_whitespace_tokens(render_snippet(1, *s));
        if (inflate(words + w) > budget) break;
        words += w;
        ++kept;
    }
    if (kept == 0) {
        out.budget_exhausted = true;
        return out;
    }

    std::vector<std::size_t> layout(kept);
    std::iota(layout.begin(), layout.end(), std::size_t{0});
    switch (order.kind) {
    case ContextOrder::Kind::rank_asc: break;
    case ContextOrder::Kind::rank_desc: std::reverse(layout.begin(), layout.end()); break;
    case ContextOrder::Kind::shuffled: {
        // Fisher-Yates with an explicit draw so the layout is identical across
        // standard library implementations.
        std::mt19937_64 rng(order.seed);
        for (std::size_t i = kept; i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(rng() % i);
            std::swap(layout[i - 1], layout[j]);
        }
        break;
    }
    }

    for (std::size_t pos = 0; pos < kept; ++pos) {
        const auto& s = *ranked[layout[pos]];
        if (pos) out.text += '\n';
        out.text += render_snippet(pos + 1, s);
        out.included_ids.push_back(s.id);
    }
    out.tokens = inflate(words);
    return out;
}

} // namespace ragbench::generation
