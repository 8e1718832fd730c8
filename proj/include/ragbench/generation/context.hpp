#pragma once

#include "ragbench/corpus/document.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ragbench::generation {

/// Presentation order of the snippets that survive the budget.
struct ContextOrder {
    enum class Kind { rank_asc, rank_desc, shuffled };

    Kind kind = Kind::rank_asc;
    std::uint64_t seed = 0; // shuffled only

    /// "rank_asc" | "rank_desc" | "shuffled" | "shuffled:<seed>". Throws UserError.
    static ContextOrder parse(std::string_view text, std::uint64_t default_seed = 0);
    std::string name() const;
};

/// ceil(1.3 * whitespace tokens). Deliberately overestimates.
std::size_t estimate_tokens(std::string_view text) noexcept;

/// "Document [<position>] (Title: <title>) <content>", position 1-based.
std::string render_snippet(std::size_t position, const corpus::Snippet& snippet);

struct AssembledContext {
    std::string text;
    std::vector<std::string> included_ids; // presentation order
    std::size_t tokens = 0;
    bool budget_exhausted = false; // snippets were given but none fit
};

/// `ranked` is in rank order (rank 1 first). Keeps the longest rank prefix
/// whose rendered text fits `budget`, dropping lowest-ranked snippets whole,
/// then lays the survivors out in `order`.
AssembledContext assemble_context(std::span<const corpus::Snippet* const> ranked, std::size_t budget,
                                  const ContextOrder& order = {});

} // namespace ragbench::generation
