#pragma once

#include <cstddef>
#include <string_view>

namespace ragbench::utf8 {

/// Number of Unicode scalar values in `text`. Bytes that are not UTF-8
/// continuation bytes each start one character, so malformed input still
/// yields a stable count.
std::size_t length(std::string_view text) noexcept;

/// Byte offset of the character with index `chars` (clamped to text.size()).
std::size_t byte_offset(std::string_view text, std::size_t chars) noexcept;

inline bool is_continuation(unsigned char c) noexcept { return (c & 0xC0u) == 0x80u; }

} // namespace ragbench::utf8
