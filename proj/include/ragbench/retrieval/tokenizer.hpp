#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ragbench::retrieval {

/// Lowercases ASCII letters and splits on every byte that is not an ASCII
/// letter or digit. Bytes >= 0x80 (non-ASCII UTF-8) count as word characters
/// so multi-byte letters are never split. No stemming, no stopwords.
std::vector<std::string> tokenize(std::string_view text);

/// Number of whitespace-separated tokens.
std::size_t count_whitespace_tokens(std::string_view text) noexcept;

} // namespace ragbench::retrieval
