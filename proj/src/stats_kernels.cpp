#include "drugwatch/stats_kernels.hpp"

#include <algorithm>


namespace drugwatch::kernels {

namespace {

/// Start offsets of runs of equal pmid in `matched` (ids are pmid-ordered).
std::vector<std::size_t> article_starts(const Index& index, const std::vector<RecordId>& matched) {
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < matched.size(); ++i)
        if (i == 0 || index.record(matched[i]).pmid != index.record(matched[i - 1]).pmid) starts.push_back(i);
    return starts;
}

MatchedArticle collapse_one(const Index& index, TermKind kind, const std::vector<RecordId>& matched,
                            std::size_t begin, std::size_t end) {
    const auto& first = index.record(matched[begin]);
    MatchedArticle a{first.pmid, first.year, age_group_of(first.age), first.gender, {}};
    for (std::size_t i = begin; i < end; ++i) {
        const auto& r = index.record(matched[i]);
        if (kind == TermKind::Drug) a.terms.insert(a.terms.end(), r.effects.begin(), r.effects.end());
        else a.terms.push_back(r.drug);
    }
    std::sort(a.terms.begin(), a.terms.end());
    a.terms.erase(std::unique(a.terms.begin(), a.terms.end()), a.terms.end());
    return a;
}

template <typename Map>
void merge_into(Map& dst, const Map& src) {
    for (const auto& [k, v] : src) dst[k] += v;
}

}  // namespace

namespace serial {

std::vector<RecordId> filter(const Index& index, const QuerySpec& canonical, const std::vector<RecordId>& candidates) {
    std::vector<RecordId> out;
    for (RecordId id : candidates)
        if (record_matches(index.record(id), canonical)) out.push_back(id);
    return out;
}

std::vector<MatchedArticle> collapse(const Index& index, TermKind kind, const std::vector<RecordId>& matched) {
    const auto starts = article_starts(index, matched);
    std::vector<MatchedArticle> out;
    for (std::size_t a = 0; a < starts.size(); ++a) {
        const std::size_t end = a + 1 < starts.size() ? starts[a + 1] : matched.size();
        out.push_back(collapse_one(index, kind, matched, starts[a], end));
    }
    return out;
}

TermTally count_terms(const std::vector<MatchedArticle>& articles) {
    TermTally tally;
    for (const auto& a : articles)
        for (const auto& t : a.terms) ++tally[t];
    return tally;
}

DemographicTally count_demographics(const std::vector<MatchedArticle>& articles) {
    DemographicTally tally;
    for (const auto& a : articles) ++tally[{a.age_group, a.gender}];
    return tally;
}

}  // namespace serial

namespace omp {

std::vector<RecordId> filter(const Index& index, const QuerySpec& canonical, const std::vector<RecordId>& candidates) {
    const auto n = static_cast<std::ptrdiff_t>(candidates.size());
    std::vector<unsigned char> keep(candidates.size(), 0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        keep[static_cast<std::size_t>(i)] =
            record_matches(index.record(candidates[static_cast<std::size_t>(i)]), canonical) ? 1 : 0;
    std::vector<RecordId> out;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (keep[i]) out.push_back(candidates[i]);
    return out;
}

std::vector<MatchedArticle> collapse(const Index& index, TermKind kind, const std::vector<RecordId>& matched) {
    const auto starts = article_starts(index, matched);
    std::vector<MatchedArticle> out(starts.size());
    const auto n = static_cast<std::ptrdiff_t>(starts.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t a = 0; a < n; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        const std::size_t end = ua + 1 < starts.size() ? starts[ua + 1] : matched.size();
        out[ua] = collapse_one(index, kind, matched, starts[ua], end);
    }
    return out;
}

TermTally count_terms(const std::vector<MatchedArticle>& articles) {
    TermTally total;
    const auto n = static_cast<std::ptrdiff_t>(articles.size());
#pragma omp parallel
    {
        TermTally local;
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < n; ++i)
            for (const auto& t : articles[static_cast<std::size_t>(i)].terms) ++local[t];
#pragma omp critical(drugwatch_count_terms)
        merge_into(total, local);
    }
    return total;
}

DemographicTally count_demographics(const std::vector<MatchedArticle>& articles) {
    DemographicTally total;
    const auto n = static_cast<std::ptrdiff_t>(articles.size());
#pragma omp parallel
    {
        DemographicTally local;
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const auto& a = articles[static_cast<std::size_t>(i)];
            ++local[{a.age_group, a.gender}];
        }
#pragma omp critical(drugwatch_count_demographics)
        merge_into(total, local);
    }
    return total;
}

}  // namespace omp

}  // namespace drugwatch::kernels
