#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace drugwatch {

/// Age in fractional years. Ranges are closed unless `hi_open`, in which case the upper
/// bound is excluded.
struct AgeValue {
    enum class Kind { Unknown, Range, Exact };

    Kind kind = Kind::Unknown;
    double lo = 0.0;
    double hi = 0.0;
    bool hi_open = false;

    static AgeValue unknown() { return {}; }
    static AgeValue exact(double years) { return {Kind::Exact, years, years, false}; }
    static AgeValue range(double lo, double hi, bool hi_open = false) { return {Kind::Range, lo, hi, hi_open}; }

    [[nodiscard]] bool contains(double years) const noexcept;

    bool operator==(const AgeValue&) const = default;
};

enum class Gender { Unknown, Male, Female };

[[nodiscard]] std::string_view to_string(Gender g) noexcept;
[[nodiscard]] std::optional<Gender> parse_gender(std::string_view s) noexcept;

/// Canonical text rendering that normalize_age maps back to the same value.
[[nodiscard]] std::string to_string(const AgeValue& age);

/// Rule table, first match wins:
///   exact  "<n>-year-old", "<n> years old", "aged <n>", "<n> yo", "<n> y/o"
///   scaled "<n> month(s)" n/12, "<n> week(s)" n/52, "<n> day(s)" n/365
///   decade "in his/her/their twenties".."nineties" -> [d, d+9]
///   stage  neonate [0, 28/365), infant [28/365, 2), child [2, 12), adolescent/teenager [12, 18),
///          adult [18, 65), elderly [65, 150]
/// plus the canonical "<lo> to <hi> years" / "<lo> to under <hi> years" form.
[[nodiscard]] AgeValue normalize_age(std::string_view span);

/// Byte range of the first age expression in `sentence`, using the normalize_age rule order.
[[nodiscard]] std::optional<std::pair<std::size_t, std::size_t>> find_age_expression(std::string_view sentence);

/// Keyword table with word boundaries; conflicting or absent keywords give Unknown.
[[nodiscard]] Gender normalize_gender(std::string_view span);

/// Gender signalled by a single lowercase word, if it is in the keyword table.
[[nodiscard]] std::optional<Gender> gender_keyword(std::string_view word) noexcept;

enum class TermKind { Drug, Effect };

[[nodiscard]] std::string_view to_string(TermKind k) noexcept;
[[nodiscard]] std::optional<TermKind> parse_term_kind(std::string_view s) noexcept;

/// synonym -> canonical head term, keys and values stored cleaned.
class SynonymDictionary {
public:
    SynonymDictionary() = default;

    /// `synonym<TAB>canonical` lines; '#' comments and blank lines skipped. Throws Error naming
    /// the line for a duplicate synonym, a malformed line, or a canonical term that is itself
    /// a synonym of something else.
    static SynonymDictionary load(const std::string& path);
    static SynonymDictionary parse(std::string_view contents, const std::string& source = "<memory>");

    void add(std::string_view synonym, std::string_view canonical);
    [[nodiscard]] std::optional<std::string> lookup(std::string_view cleaned) const;
    [[nodiscard]] std::size_t size() const noexcept { return map_.size(); }

private:
    std::map<std::string, std::string, std::less<>> map_;
};

/// Lowercases, strips surrounding punctuation, collapses whitespace, strips trailing dose
/// and route tokens, then maps synonyms to their canonical term. Throws Error when nothing
/// is left after cleaning. The kind is accepted for symmetry; both kinds share one table.
[[nodiscard]] std::string normalize_term(std::string_view span, TermKind kind,
                                         const SynonymDictionary& synonyms = {});

/// The cleaning steps alone, without dictionary lookup; may return an empty string.
[[nodiscard]] std::string clean_term(std::string_view span);

}  // namespace drugwatch
