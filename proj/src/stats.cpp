#include "drugwatch/stats.hpp"

#include <algorithm>

namespace drugwatch {

namespace {

bool in_group(const MatchedArticle& a, const GroupSelector& g) {
    if (const auto* age = std::get_if<AgeGroup>(&g)) return a.age_group == *age;
    return a.gender == std::get<Gender>(g);
}

TermTally tally_terms(const std::vector<MatchedArticle>& articles, Exec exec) {
    return exec == Exec::Parallel ? kernels::omp::count_terms(articles) : kernels::serial::count_terms(articles);
}

std::vector<MatchedArticle> select(const std::vector<MatchedArticle>& articles, const GroupSelector& g) {
    std::vector<MatchedArticle> out;
    std::copy_if(articles.begin(), articles.end(), std::back_inserter(out),
                 [&](const MatchedArticle& a) { return in_group(a, g); });
    return out;
}

}  // namespace

std::vector<TermCount> rank_terms(const TermTally& tally, std::size_t n) {
    std::size_t mentions = 0;
    std::vector<TermCount> ranked;
    for (const auto& [term, count] : tally) {
        mentions += count;
        ranked.push_back(TermCount{term, count, 0.0, 0});
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const TermCount& a, const TermCount& b) { return a.count > b.count; });
    if (ranked.size() > n) ranked.resize(n);
    const std::size_t page = (ranked.size() + 4) / 5;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        ranked[i].proportion = static_cast<double>(ranked[i].count) / static_cast<double>(mentions);
        ranked[i].rarity_tier = static_cast<int>(i / page) + 1;
    }
    return ranked;
}

std::vector<MatchedArticle> match_articles(const Index& index, const QuerySpec& q, Exec exec) {
    const QuerySpec c = index.canonicalize(q);
    const auto candidates = index.candidates(c);
    if (exec == Exec::Parallel) {
        return kernels::omp::collapse(index, c.kind, kernels::omp::filter(index, c, candidates));
    }
    return kernels::serial::collapse(index, c.kind, kernels::serial::filter(index, c, candidates));
}

std::vector<std::string> search_articles(const Index& index, const QuerySpec& q, Exec exec) {
    auto articles = match_articles(index, q, exec);
    std::sort(articles.begin(), articles.end(), [](const MatchedArticle& a, const MatchedArticle& b) {
        if (a.year.has_value() != b.year.has_value()) return a.year.has_value();
        if (a.year != b.year) return *a.year > *b.year;
        return a.pmid < b.pmid;
    });
    std::vector<std::string> out;
    out.reserve(articles.size());
    for (auto& a : articles) out.push_back(std::move(a.pmid));
    return out;
}

std::map<int, std::size_t> yearly_counts(const Index& index, const QuerySpec& q, Exec exec) {
    std::map<int, std::size_t> out;
    for (const auto& a : match_articles(index, q, exec))
        if (a.year) ++out[*a.year];
    return out;
}

std::vector<TermCount> top_cooccurring(const Index& index, const QuerySpec& q, std::size_t n, Exec exec) {
    return rank_terms(tally_terms(match_articles(index, q, exec), exec), n);
}

DemographicTally demographic_distribution(const Index& index, const QuerySpec& q, Exec exec) {
    const auto articles = match_articles(index, q, exec);
    return exec == Exec::Parallel ? kernels::omp::count_demographics(articles)
                                  : kernels::serial::count_demographics(articles);
}

std::vector<TermCount> group_breakdown(const Index& index, const QuerySpec& q, GroupSelector group, std::size_t n,
                                       Exec exec) {
    return rank_terms(tally_terms(select(match_articles(index, q, exec), group), exec), n);
}

std::map<DemographicCell, CrossCell> cross_breakdown(const Index& index, const QuerySpec& q, std::size_t k,
                                                     Exec exec) {
    std::map<DemographicCell, std::vector<MatchedArticle>> cells;
    for (auto& a : match_articles(index, q, exec)) cells[{a.age_group, a.gender}].push_back(std::move(a));
    std::map<DemographicCell, CrossCell> out;
    for (const auto& [cell, articles] : cells)
        out[cell] = CrossCell{articles.size(), rank_terms(tally_terms(articles, exec), k)};
    return out;
}

StatsBundle compute_stats(const Index& index, const QuerySpec& q, std::size_t n, std::size_t k, Exec exec) {
    StatsBundle b;
    const auto articles = match_articles(index, q, exec);
    b.total = articles.size();
    for (const auto& a : articles)
        if (a.year) ++b.yearly[*a.year];
    b.top_terms = rank_terms(tally_terms(articles, exec), n);
    b.demo = exec == Exec::Parallel ? kernels::omp::count_demographics(articles)
                                    : kernels::serial::count_demographics(articles);
    for (AgeGroup g : age_groups()) {
        auto sel = select(articles, g);
        if (!sel.empty()) b.breakdown[std::string(to_string(g))] = rank_terms(tally_terms(sel, exec), 10);
    }
    for (Gender g : {Gender::Male, Gender::Female, Gender::Unknown}) {
        auto sel = select(articles, g);
        if (!sel.empty()) b.breakdown[std::string(to_string(g))] = rank_terms(tally_terms(sel, exec), 10);
    }
    std::map<DemographicCell, std::vector<MatchedArticle>> cells;
    for (const auto& a : articles) cells[{a.age_group, a.gender}].push_back(a);
    for (const auto& [cell, sel] : cells) b.cross[cell] = CrossCell{sel.size(), rank_terms(tally_terms(sel, exec), k)};
    return b;
}

}  // namespace drugwatch
