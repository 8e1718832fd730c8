#include "ragbench/utf8.hpp"

namespace ragbench::utf8 {

std::size_t length(std::string_view text) noexcept {
    std::size_t n = 0;
    for (unsigned char c : text) {
        if (!is_continuation(c)) ++n;
    }
    return n;
}

std::size_t byte_offset(std::string_view text, std::size_t chars) noexcept {
    std::size_t seen = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (is_continuation(static_cast<unsigned char>(text[i]))) continue;
        if (seen == chars) return i;
        ++seen;
    }
    return text.size();
}

} // namespace ragbench::utf8
