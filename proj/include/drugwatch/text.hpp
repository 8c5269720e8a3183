#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace drugwatch::text {

[[nodiscard]] inline bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
[[nodiscard]] inline bool is_alnum(char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}
[[nodiscard]] inline bool is_upper(char c) noexcept { return c >= 'A' && c <= 'Z'; }
[[nodiscard]] inline bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }
[[nodiscard]] inline char to_lower(char c) noexcept {
    return is_upper(c) ? static_cast<char>(c - 'A' + 'a') : c;
}

/// Word characters for boundary checks: ASCII alphanumerics plus any non-ASCII byte,
/// so that UTF-8 letters never count as a boundary.
[[nodiscard]] inline bool is_word_char(char c) noexcept {
    return is_alnum(c) || static_cast<unsigned char>(c) >= 0x80;
}

[[nodiscard]] std::string lower(std::string_view s);
[[nodiscard]] std::string_view trim(std::string_view s) noexcept;
[[nodiscard]] std::string collapse_whitespace(std::string_view s);

/// True when [begin, end) of `s` is delimited by non-word characters (or the string ends).
[[nodiscard]] bool at_word_boundaries(std::string_view s, std::size_t begin, std::size_t end) noexcept;

/// Lowercased maximal ASCII alphanumeric runs.
[[nodiscard]] std::vector<std::string> alnum_tokens(std::string_view s);

/// Lowercased whitespace-delimited tokens.
[[nodiscard]] std::vector<std::string> whitespace_tokens(std::string_view s);

/// All case-insensitive occurrences of `needle` in `haystack` that sit on word boundaries,
/// non-overlapping, left to right.
[[nodiscard]] std::vector<std::size_t> find_word_occurrences(std::string_view haystack,
                                                             std::string_view needle);

[[nodiscard]] std::vector<std::string> split_lines(std::string_view s);

[[nodiscard]] std::string read_file(const std::string& path);

}  // namespace drugwatch::text
