#include "drugwatch/normalize.hpp"

#include "drugwatch/error.hpp"
#include "drugwatch/text.hpp"

#include <array>
#include <charconv>
#include <cstdlib>
#include <regex>
#include <set>

namespace drugwatch {

namespace {

constexpr double kMaxAge = 150.0;

const std::regex& canonical_range_re() {
    static const std::regex re(R"(^(\d+(?:\.\d+)?) to (under )?(\d+(?:\.\d+)?) years$)");
    return re;
}

enum class AgeRule { Exact, Months, Weeks, Days, Decade, Stage };

struct AgePattern {
    AgeRule rule;
    std::regex re;
};

const std::vector<AgePattern>& age_patterns() {
    static const auto flags = std::regex::ECMAScript | std::regex::icase;
    static const std::vector<AgePattern> patterns = {
        {AgeRule::Exact, std::regex(R"(\b(\d+(?:\.\d+)?)[- ]years?[- ]old\b)", flags)},
        {AgeRule::Exact, std::regex(R"(\baged (\d+(?:\.\d+)?)\b)", flags)},
        {AgeRule::Exact, std::regex(R"(\b(\d+(?:\.\d+)?) ?yo\b)", flags)},
        {AgeRule::Exact, std::regex(R"(\b(\d+(?:\.\d+)?) ?y/o\b)", flags)},
        {AgeRule::Months, std::regex(R"(\b(\d+(?:\.\d+)?)[- ]months?\b)", flags)},
        {AgeRule::Weeks, std::regex(R"(\b(\d+(?:\.\d+)?)[- ]weeks?\b)", flags)},
        {AgeRule::Days, std::regex(R"(\b(\d+(?:\.\d+)?)[- ]days?\b)", flags)},
        {AgeRule::Decade,
         std::regex(R"(\bin (?:his|her|their) (twenties|thirties|forties|fifties|sixties|seventies|eighties|nineties)\b)",
                    flags)},
        {AgeRule::Stage, std::regex(R"(\b(neonate|infant|child|adolescent|teenager|adult|elderly)\b)", flags)},
    };
    return patterns;
}

double parse_number(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

AgeValue bounded_exact(double years) {
    if (!(years >= 0.0) || years > kMaxAge) return AgeValue::unknown();
    return AgeValue::exact(years);
}

AgeValue decade_value(const std::string& word) {
    static const std::array<std::string_view, 8> kDecades = {"twenties", "thirties", "forties", "fifties",
                                                            "sixties",  "seventies", "eighties", "nineties"};
    const std::string w = text::lower(word);
    for (std::size_t i = 0; i < kDecades.size(); ++i) {
        if (w == kDecades[i]) {
            const double d = 20.0 + 10.0 * static_cast<double>(i);
            return AgeValue::range(d, d + 9.0);
        }
    }
    return AgeValue::unknown();
}

AgeValue stage_value(const std::string& word) {
    const std::string w = text::lower(word);
    if (w == "neonate") return AgeValue::range(0.0, 28.0 / 365.0, true);
    if (w == "infant") return AgeValue::range(28.0 / 365.0, 2.0, true);
    if (w == "child") return AgeValue::range(2.0, 12.0, true);
    if (w == "adolescent" || w == "teenager") return AgeValue::range(12.0, 18.0, true);
    if (w == "adult") return AgeValue::range(18.0, 65.0, true);
    if (w == "elderly") return AgeValue::range(65.0, kMaxAge);
    return AgeValue::unknown();
}

AgeValue apply_rule(AgeRule rule, const std::smatch& m) {
    switch (rule) {
        case AgeRule::Exact: return bounded_exact(parse_number(m[1].str()));
        case AgeRule::Months: return bounded_exact(parse_number(m[1].str()) / 12.0);
        case AgeRule::Weeks: return bounded_exact(parse_number(m[1].str()) / 52.0);
        case AgeRule::Days: return bounded_exact(parse_number(m[1].str()) / 365.0);
        case AgeRule::Decade: return decade_value(m[1].str());
        case AgeRule::Stage: return stage_value(m[1].str());
    }
    return AgeValue::unknown();
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

constexpr std::array<std::string_view, 6> kMaleWords = {"man", "male", "boy", "he", "his", "gentleman"};
constexpr std::array<std::string_view, 6> kFemaleWords = {"woman", "female", "girl", "she", "her", "lady"};

constexpr std::array<std::string_view, 8> kRouteTokens = {"tablet", "tablets", "capsule", "capsules",
                                                         "injection", "oral", "iv", "intravenous"};

bool is_strippable_punct(char c) {
    const auto u = static_cast<unsigned char>(c);
    return u < 0x80 && !text::is_alnum(c);
}

/// Strips leading/trailing ASCII punctuation, whitespace and UTF-8 curly quotes.
std::string strip_surrounding(std::string s) {
    static const std::array<std::string_view, 4> kCurly = {"\xE2\x80\x9C", "\xE2\x80\x9D", "\xE2\x80\x98",
                                                          "\xE2\x80\x99"};
    bool changed = true;
    while (changed && !s.empty()) {
        changed = false;
        if (is_strippable_punct(s.front())) {
            s.erase(0, 1);
            changed = true;
            continue;
        }
        if (is_strippable_punct(s.back())) {
            s.pop_back();
            changed = true;
            continue;
        }
        for (auto q : kCurly) {
            if (s.starts_with(q)) {
                s.erase(0, q.size());
                changed = true;
            } else if (s.ends_with(q)) {
                s.erase(s.size() - q.size());
                changed = true;
            }
        }
    }
    return s;
}

bool strip_route_suffix(std::string& s) {
    const auto sp = s.rfind(' ');
    const std::string_view last = sp == std::string::npos ? std::string_view(s) : std::string_view(s).substr(sp + 1);
    for (auto tok : kRouteTokens) {
        if (last == tok) {
            s.erase(sp == std::string::npos ? 0 : sp);
            return true;
        }
    }
    return false;
}

bool strip_dose_suffix(std::string& s) {
    static const std::regex re("(^|\\s)[0-9]+(\\.[0-9]+)? ?(mg|g|mcg|\xC2\xB5g|ml|iu)(/\\w+)?$");
    std::smatch m;
    if (!std::regex_search(s, m, re)) return false;
    s.erase(static_cast<std::size_t>(m.position(0)));
    return true;
}

}  // namespace

bool AgeValue::contains(double years) const noexcept {
    if (kind == Kind::Unknown) return false;
    if (years < lo) return false;
    return hi_open ? years < hi : years <= hi;
}

std::string_view to_string(Gender g) noexcept {
    switch (g) {
        case Gender::Male: return "male";
        case Gender::Female: return "female";
        case Gender::Unknown: break;
    }
    return "unknown";
}

std::optional<Gender> parse_gender(std::string_view s) noexcept {
    if (s == "male") return Gender::Male;
    if (s == "female") return Gender::Female;
    if (s == "unknown") return Gender::Unknown;
    return std::nullopt;
}

std::string to_string(const AgeValue& age) {
    switch (age.kind) {
        case AgeValue::Kind::Exact: return format_number(age.lo) + " years old";
        case AgeValue::Kind::Range:
            return format_number(age.lo) + (age.hi_open ? " to under " : " to ") + format_number(age.hi) + " years";
        case AgeValue::Kind::Unknown: break;
    }
    return "unknown";
}

AgeValue normalize_age(std::string_view span) {
    const std::string s(text::trim(span));
    std::smatch m;
    if (std::regex_match(s, m, canonical_range_re())) {
        const double lo = parse_number(m[1].str());
        const double hi = parse_number(m[3].str());
        if (lo <= hi && hi <= kMaxAge) return AgeValue::range(lo, hi, m[2].matched);
        return AgeValue::unknown();
    }
    for (const auto& p : age_patterns())
        if (std::regex_search(s, m, p.re)) return apply_rule(p.rule, m);
    return AgeValue::unknown();
}

std::optional<std::pair<std::size_t, std::size_t>> find_age_expression(std::string_view sentence) {
    const std::string s(sentence);
    std::smatch m;
    for (const auto& p : age_patterns()) {
        if (std::regex_search(s, m, p.re)) {
            const auto b = static_cast<std::size_t>(m.position(0));
            return std::make_pair(b, b + static_cast<std::size_t>(m.length(0)));
        }
    }
    return std::nullopt;
}

std::optional<Gender> gender_keyword(std::string_view word) noexcept {
    for (auto w : kMaleWords)
        if (w == word) return Gender::Male;
    for (auto w : kFemaleWords)
        if (w == word) return Gender::Female;
    return std::nullopt;
}

Gender normalize_gender(std::string_view span) {
    bool male = false, female = false;
    for (const auto& tok : text::alnum_tokens(span)) {
        if (auto g = gender_keyword(tok)) (*g == Gender::Male ? male : female) = true;
    }
    if (male == female) return Gender::Unknown;
    return male ? Gender::Male : Gender::Female;
}

std::string_view to_string(TermKind k) noexcept { return k == TermKind::Drug ? "drug" : "effect"; }

std::optional<TermKind> parse_term_kind(std::string_view s) noexcept {
    if (s == "drug") return TermKind::Drug;
    if (s == "effect") return TermKind::Effect;
    return std::nullopt;
}

void SynonymDictionary::add(std::string_view synonym, std::string_view canonical) {
    std::string key = clean_term(synonym);
    std::string value = clean_term(canonical);
    if (key.empty() || value.empty()) throw Error("empty synonym or canonical term");
    if (map_.count(key)) throw Error("duplicate synonym '" + key + "'");
    auto chained = map_.find(value);
    if (chained != map_.end() && chained->second != value)
        throw Error("canonical term '" + value + "' is itself a synonym of '" + chained->second + "'");
    for (const auto& [k, v] : map_)
        if (v == key && key != value)
            throw Error("synonym '" + key + "' is already used as a canonical term");
    map_.emplace(std::move(key), std::move(value));
}

std::optional<std::string> SynonymDictionary::lookup(std::string_view cleaned) const {
    auto it = map_.find(cleaned);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

SynonymDictionary SynonymDictionary::parse(std::string_view contents, const std::string& source) {
    SynonymDictionary dict;
    std::size_t lineno = 0;
    for (const auto& raw : text::split_lines(contents)) {
        ++lineno;
        const auto line = text::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto tab = line.find('\t');
        const std::string where = source + ":" + std::to_string(lineno);
        if (tab == std::string_view::npos) throw Error(where + ": expected synonym<TAB>canonical");
        try {
            dict.add(line.substr(0, tab), line.substr(tab + 1));
        } catch (const Error& e) {
            throw Error(where + ": " + e.what());
        }
    }
    return dict;
}

SynonymDictionary SynonymDictionary::load(const std::string& path) { return parse(text::read_file(path), path); }

std::string clean_term(std::string_view span) {
    std::string s = text::collapse_whitespace(text::lower(span));
    bool changed = true;
    while (changed) {
        const std::string before = s;
        s = text::collapse_whitespace(strip_surrounding(std::move(s)));
        while (strip_route_suffix(s) || strip_dose_suffix(s)) s = text::collapse_whitespace(s);
        changed = s != before;
    }
    return s;
}

std::string normalize_term(std::string_view span, TermKind /*kind*/, const SynonymDictionary& synonyms) {
    std::string cleaned = clean_term(span);
    if (cleaned.empty()) throw Error("term '" + std::string(span) + "' is empty after cleaning");
    if (auto canonical = synonyms.lookup(cleaned)) return *canonical;
    return cleaned;
}

}  // namespace drugwatch
