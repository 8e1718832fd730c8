#pragma once

#include "ragbench/corpus/document.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ragbench::corpus {

/// Result of a lossless recursive split.
///
/// `gaps` has one more element than `chunks`: gaps[0] precedes the first
/// chunk and gaps[i + 1] follows chunk i. Gaps hold the separators consumed by
/// splitting plus any whitespace-only fragments, so
/// gaps[0] + chunks[0] + gaps[1] + ... + chunks[n-1] + gaps[n] == input.
struct ChunkSplit {
    std::vector<std::string> chunks;
    std::vector<std::string> gaps;

    std::string reassemble() const;
};

/// Recursive character splitting. Text longer than `max_chars` characters is
/// split on the highest-priority separator it contains (blank line, newline,
/// sentence end, whitespace), adjacent pieces are greedily re-merged while they
/// fit, and pieces that still do not fit recurse to the next separator. Text
/// with no separator left is hard-cut every `max_chars` characters.
///
/// Lengths count Unicode scalar values. Throws std::invalid_argument if
/// max_chars == 0.
ChunkSplit split_recursive(std::string_view text, std::size_t max_chars);

/// The chunk contents of split_recursive().
std::vector<std::string> chunk_recursive(std::string_view text, std::size_t max_chars);

/// One snippet per paragraph of a sectioned document, titled
/// "<doc title> -- <heading> -- <child heading> ...", in document order.
/// A flat document yields nothing.
std::vector<Snippet> chunk_hierarchical(const Document& doc);

/// Separator used when splicing heading paths into titles.
inline constexpr std::string_view kHeadingSeparator = " -- ";

} // namespace ragbench::corpus
