#pragma once

#include "drugwatch/index.hpp"
#include "drugwatch/stats_kernels.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace drugwatch {

// Every statistic counts matched articles: all records of one pmid that match a query are
// collapsed into a single MatchedArticle before anything is tallied.

enum class Exec { Serial, Parallel };

struct TermCount {
    std::string term;
    std::size_t count = 0;
    double proportion = 0.0;  // count over all co-occurrence mentions of the untruncated list
    int rarity_tier = 0;      // 1..5

    bool operator==(const TermCount&) const = default;
};

using GroupSelector = std::variant<AgeGroup, Gender>;

struct CrossCell {
    std::size_t articles = 0;
    std::vector<TermCount> top;

    bool operator==(const CrossCell&) const = default;
};

struct StatsBundle {
    std::size_t total = 0;
    std::map<int, std::size_t> yearly;
    std::vector<TermCount> top_terms;
    DemographicTally demo;
    std::map<std::string, std::vector<TermCount>> breakdown;  // group name -> top 10
    std::map<DemographicCell, CrossCell> cross;
};

[[nodiscard]] std::vector<MatchedArticle> match_articles(const Index& index, const QuerySpec& q,
                                                         Exec exec = Exec::Parallel);

/// Article pmids, year descending (unknown years last), then pmid ascending.
[[nodiscard]] std::vector<std::string> search_articles(const Index& index, const QuerySpec& q,
                                                       Exec exec = Exec::Parallel);

[[nodiscard]] std::map<int, std::size_t> yearly_counts(const Index& index, const QuerySpec& q,
                                                       Exec exec = Exec::Parallel);

/// Opposite-kind terms ranked by count desc then term asc, cut to `n`. The rarity tier is the
/// page number when the returned list is split into five pages of ceil(len/5).
[[nodiscard]] std::vector<TermCount> top_cooccurring(const Index& index, const QuerySpec& q, std::size_t n = 50,
                                                     Exec exec = Exec::Parallel);

[[nodiscard]] DemographicTally demographic_distribution(const Index& index, const QuerySpec& q,
                                                        Exec exec = Exec::Parallel);

/// top_cooccurring over the articles in one age or gender group.
[[nodiscard]] std::vector<TermCount> group_breakdown(const Index& index, const QuerySpec& q, GroupSelector group,
                                                     std::size_t n = 10, Exec exec = Exec::Parallel);

/// group_breakdown for every non-empty (age group, gender) cell.
[[nodiscard]] std::map<DemographicCell, CrossCell> cross_breakdown(const Index& index, const QuerySpec& q,
                                                                   std::size_t k = 10, Exec exec = Exec::Parallel);

[[nodiscard]] StatsBundle compute_stats(const Index& index, const QuerySpec& q, std::size_t n = 50,
                                        std::size_t k = 10, Exec exec = Exec::Parallel);

/// Ranking step shared by the operations above.
[[nodiscard]] std::vector<TermCount> rank_terms(const TermTally& tally, std::size_t n);

}  // namespace drugwatch
