#include "drugwatch/index.hpp"

#include "drugwatch/text.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <set>

namespace drugwatch {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a(std::uint64_t h, std::string_view s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= kFnvPrime;
    }
    return h;
}

std::vector<std::string> canonical_terms(const std::vector<std::string>& raw, TermKind kind,
                                         const SynonymDictionary& synonyms) {
    std::set<std::string> out;
    for (const auto& t : raw) {
        try {
            out.insert(normalize_term(t, kind, synonyms));
        } catch (const Error&) {
        }
    }
    return {out.begin(), out.end()};
}

TermKind opposite(TermKind k) { return k == TermKind::Drug ? TermKind::Effect : TermKind::Drug; }

bool field_intersects(const NormalizedEventRecord& r, TermKind kind, const std::vector<std::string>& sorted_terms) {
    if (kind == TermKind::Drug) return std::binary_search(sorted_terms.begin(), sorted_terms.end(), r.drug);
    for (const auto& e : r.effects)
        if (std::binary_search(sorted_terms.begin(), sorted_terms.end(), e)) return true;
    return false;
}

}  // namespace

std::string_view to_string(AgeGroup g) noexcept {
    switch (g) {
        case AgeGroup::Neonate: return "neonate";
        case AgeGroup::Infant: return "infant";
        case AgeGroup::Child: return "child";
        case AgeGroup::Adolescent: return "adolescent";
        case AgeGroup::Adult: return "adult";
        case AgeGroup::Elderly: return "elderly";
        case AgeGroup::Unknown: break;
    }
    return "unknown";
}

std::optional<AgeGroup> parse_age_group(std::string_view s) noexcept {
    for (AgeGroup g : {AgeGroup::Neonate, AgeGroup::Infant, AgeGroup::Child, AgeGroup::Adolescent, AgeGroup::Adult,
                       AgeGroup::Elderly, AgeGroup::Unknown})
        if (to_string(g) == s) return g;
    return std::nullopt;
}

const std::vector<AgeGroup>& age_groups() noexcept {
    static const std::vector<AgeGroup> kGroups = {AgeGroup::Neonate,    AgeGroup::Infant, AgeGroup::Child,
                                                  AgeGroup::Adolescent, AgeGroup::Adult,  AgeGroup::Elderly};
    return kGroups;
}

std::pair<double, double> age_group_bounds(AgeGroup g) {
    switch (g) {
        case AgeGroup::Neonate: return {0.0, kNeonateUpper};
        case AgeGroup::Infant: return {kNeonateUpper, 2.0};
        case AgeGroup::Child: return {2.0, 12.0};
        case AgeGroup::Adolescent: return {12.0, 18.0};
        case AgeGroup::Adult: return {18.0, 65.0};
        case AgeGroup::Elderly: return {65.0, std::numeric_limits<double>::infinity()};
        case AgeGroup::Unknown: break;
    }
    throw Error("the unknown age group has no bounds");
}

AgeGroup age_group_of(const AgeValue& age) noexcept {
    if (age.kind == AgeValue::Kind::Unknown) return AgeGroup::Unknown;
    for (AgeGroup g : age_groups()) {
        const auto [lo, hi] = age_group_bounds(g);
        if (age.lo < lo || age.lo >= hi) continue;
        const bool upper_ok = age.hi < hi || (age.hi == hi && age.hi_open && age.kind == AgeValue::Kind::Range);
        if (upper_ok) return g;
        return AgeGroup::Unknown;  // starts in g but ends past it
    }
    return AgeGroup::Unknown;
}

bool record_matches(const NormalizedEventRecord& r, const QuerySpec& q) {
    if (!field_intersects(r, q.kind, q.terms)) return false;
    if (!q.cofilter.empty() && !field_intersects(r, opposite(q.kind), q.cofilter)) return false;
    if (q.age_exact && !r.age.contains(*q.age_exact)) return false;
    if (q.age_group && age_group_of(r.age) != *q.age_group) return false;
    if (q.gender && r.gender != *q.gender) return false;
    if (q.year_range) {
        if (!r.year || *r.year < q.year_range->first || *r.year > q.year_range->second) return false;
    }
    return true;
}

Index Index::build(std::vector<NormalizedEventRecord> records, SynonymDictionary synonyms) {
    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        return std::tie(a.pmid, a.drug) < std::tie(b.pmid, b.drug);
    });
    for (std::size_t i = 1; i < records.size(); ++i)
        if (records[i].pmid == records[i - 1].pmid && records[i].drug == records[i - 1].drug)
            throw Error("duplicate record key (" + records[i].pmid + ", " + records[i].drug + ")");
    if (records.size() > std::numeric_limits<RecordId>::max()) throw Error("too many records for one index");

    Index idx;
    std::uint64_t stamp = kFnvOffset;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto id = static_cast<RecordId>(i);
        const auto& r = records[i];
        idx.drug_postings_[r.drug].push_back(id);
        if (r.year) ++idx.drug_years_[r.drug][*r.year];
        for (const auto& e : r.effects) {
            idx.effect_postings_[e].push_back(id);
            if (r.year) ++idx.effect_years_[e][*r.year];
        }
        stamp = fnv1a(stamp, to_json(r).dump());
        stamp = fnv1a(stamp, "\n");
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(stamp));
    idx.build_stamp_ = buf;
    idx.records_ = std::move(records);
    idx.synonyms_ = std::move(synonyms);
    return idx;
}

const std::map<std::string, std::vector<RecordId>, std::less<>>& Index::postings(TermKind kind) const noexcept {
    return kind == TermKind::Drug ? drug_postings_ : effect_postings_;
}

const std::map<int, std::size_t>& Index::year_histogram(TermKind kind, std::string_view term) const {
    static const std::map<int, std::size_t> kEmpty;
    const auto& years = kind == TermKind::Drug ? drug_years_ : effect_years_;
    auto it = years.find(term);
    return it == years.end() ? kEmpty : it->second;
}

QuerySpec Index::canonicalize(const QuerySpec& q) const {
    if (q.age_exact && q.age_group) throw InvalidQuery("exact age and age group filters are mutually exclusive");
    if (q.year_range && q.year_range->first > q.year_range->second) throw InvalidQuery("empty year range");
    QuerySpec c = q;
    c.terms = canonical_terms(q.terms, q.kind, synonyms_);
    c.cofilter = canonical_terms(q.cofilter, opposite(q.kind), synonyms_);
    if (c.terms.empty()) throw InvalidQuery("query has no usable terms");
    if (!q.cofilter.empty() && c.cofilter.empty()) throw InvalidQuery("cofilter has no usable terms");
    return c;
}

std::vector<RecordId> Index::candidates(const QuerySpec& canonical) const {
    const auto& post = postings(canonical.kind);
    std::vector<RecordId> out;
    for (const auto& t : canonical.terms) {
        auto it = post.find(t);
        if (it == post.end()) continue;
        std::vector<RecordId> merged;
        merged.reserve(out.size() + it->second.size());
        std::set_union(out.begin(), out.end(), it->second.begin(), it->second.end(), std::back_inserter(merged));
        out = std::move(merged);
    }
    return out;
}

std::vector<std::string> Index::suggest(TermKind kind, std::string_view prefix, std::size_t limit) const {
    const std::string p = text::collapse_whitespace(text::lower(prefix));
    std::vector<std::pair<std::size_t, std::string>> hits;
    if (p.empty()) return {};
    const auto& post = postings(kind);
    for (auto it = post.lower_bound(p); it != post.end() && it->first.starts_with(p); ++it)
        hits.emplace_back(it->second.size(), it->first);
    std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::vector<std::string> out;
    for (std::size_t i = 0; i < hits.size() && i < limit; ++i) out.push_back(hits[i].second);
    return out;
}

bool Index::same_content(const Index& other) const {
    return records_ == other.records_ && drug_postings_ == other.drug_postings_ &&
           effect_postings_ == other.effect_postings_ && drug_years_ == other.drug_years_ &&
           effect_years_ == other.effect_years_ && build_stamp_ == other.build_stamp_;
}

}  // namespace drugwatch
