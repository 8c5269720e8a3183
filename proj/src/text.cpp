#include "drugwatch/text.hpp"

#include "drugwatch/error.hpp"

#include <fstream>
#include <sstream>

namespace drugwatch::text {

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = to_lower(c);
    return out;
}

std::string_view trim(std::string_view s) noexcept {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (char c : trim(s)) {
        if (is_space(c)) {
            pending_space = true;
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.push_back(c);
    }
    return out;
}

bool at_word_boundaries(std::string_view s, std::size_t begin, std::size_t end) noexcept {
    if (begin > 0 && is_word_char(s[begin - 1]) && is_word_char(s[begin])) return false;
    if (end < s.size() && end > 0 && is_word_char(s[end]) && is_word_char(s[end - 1])) return false;
    return true;
}

std::vector<std::string> alnum_tokens(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (is_alnum(c)) {
            cur.push_back(to_lower(c));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::vector<std::string> whitespace_tokens(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (is_space(c)) {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(to_lower(c));
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::vector<std::size_t> find_word_occurrences(std::string_view haystack, std::string_view needle) {
    std::vector<std::size_t> out;
    if (needle.empty() || needle.size() > haystack.size()) return out;
    const std::string hay = lower(haystack);
    const std::string pat = lower(needle);
    std::size_t pos = 0;
    while ((pos = hay.find(pat, pos)) != std::string::npos) {
        if (at_word_boundaries(hay, pos, pos + pat.size())) {
            out.push_back(pos);
            pos += pat.size();
        } else {
            ++pos;
        }
    }
    return out;
}

std::vector<std::string> split_lines(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start < s.size()) {
        std::size_t nl = s.find('\n', start);
        if (nl == std::string_view::npos) nl = s.size();
        std::string_view line = s.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        out.emplace_back(line);
        start = nl + 1;
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace drugwatch::text
