#pragma once

#include "drugwatch/error.hpp"
#include "drugwatch/normalize.hpp"
#include "drugwatch/record.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace drugwatch {

/// Age buckets shared by the literature and FAERS sides. Bounds are half-open [lo, hi).
enum class AgeGroup { Neonate, Infant, Child, Adolescent, Adult, Elderly, Unknown };

inline constexpr double kNeonateUpper = 28.0 / 365.0;

[[nodiscard]] std::string_view to_string(AgeGroup g) noexcept;
[[nodiscard]] std::optional<AgeGroup> parse_age_group(std::string_view s) noexcept;
/// The six concrete groups, youngest first (Unknown excluded).
[[nodiscard]] const std::vector<AgeGroup>& age_groups() noexcept;
/// [lo, hi) in years; Elderly has hi = +inf. Unknown has no bounds.
[[nodiscard]] std::pair<double, double> age_group_bounds(AgeGroup g);

/// Group fully containing the age value; a range straddling a boundary maps to Unknown.
[[nodiscard]] AgeGroup age_group_of(const AgeValue& age) noexcept;

/// A faceted search request. `terms` are ORed; a non-empty `cofilter` must hit the opposite field.
struct QuerySpec {
    TermKind kind = TermKind::Drug;
    std::vector<std::string> terms;
    std::vector<std::string> cofilter;
    std::optional<double> age_exact;
    std::optional<AgeGroup> age_group;
    std::optional<Gender> gender;
    std::optional<std::pair<int, int>> year_range;  // inclusive
};

class InvalidQuery : public Error {
public:
    using Error::Error;
};

using RecordId = std::uint32_t;

/// Immutable in-memory index over a record store.
class Index {
public:
    Index() = default;

    /// Records are stored sorted by (pmid, drug). Throws Error on a duplicate (pmid, drug).
    static Index build(std::vector<NormalizedEventRecord> records, SynonymDictionary synonyms = {});

    [[nodiscard]] const std::vector<NormalizedEventRecord>& records() const noexcept { return records_; }
    [[nodiscard]] const NormalizedEventRecord& record(RecordId id) const { return records_.at(id); }

    /// term -> ascending, duplicate-free record ids.
    [[nodiscard]] const std::map<std::string, std::vector<RecordId>, std::less<>>& postings(TermKind kind) const noexcept;
    [[nodiscard]] const std::map<int, std::size_t>& year_histogram(TermKind kind, std::string_view term) const;
    [[nodiscard]] const std::string& build_stamp() const noexcept { return build_stamp_; }
    [[nodiscard]] const SynonymDictionary& synonyms() const noexcept { return synonyms_; }

    /// Validates `q` and maps its terms to canonical form; terms that clean to nothing are
    /// dropped. Throws InvalidQuery for no terms or both age filters.
    [[nodiscard]] QuerySpec canonicalize(const QuerySpec& q) const;

    /// Sorted union of the postings of the (canonical) query terms.
    [[nodiscard]] std::vector<RecordId> candidates(const QuerySpec& canonical) const;

    /// Up to `limit` terms of `kind` starting with the lowercased prefix, by record count desc.
    [[nodiscard]] std::vector<std::string> suggest(TermKind kind, std::string_view prefix, std::size_t limit = 10) const;

    /// Postings and histograms compare equal; the stamp is derived from the record content.
    [[nodiscard]] bool same_content(const Index& other) const;

private:
    std::vector<NormalizedEventRecord> records_;
    std::map<std::string, std::vector<RecordId>, std::less<>> drug_postings_;
    std::map<std::string, std::vector<RecordId>, std::less<>> effect_postings_;
    std::map<std::string, std::map<int, std::size_t>, std::less<>> drug_years_;
    std::map<std::string, std::map<int, std::size_t>, std::less<>> effect_years_;
    SynonymDictionary synonyms_;
    std::string build_stamp_;
};

/// True when the record satisfies every facet of a canonical query.
[[nodiscard]] bool record_matches(const NormalizedEventRecord& r, const QuerySpec& canonical);

}  // namespace drugwatch
