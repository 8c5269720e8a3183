#pragma once

#include "drugwatch/index.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace drugwatch {

/// Matched records of one article collapsed into a single countable unit.
struct MatchedArticle {
    std::string pmid;
    std::optional<int> year;
    AgeGroup age_group = AgeGroup::Unknown;
    Gender gender = Gender::Unknown;
    std::vector<std::string> terms;  // opposite-kind terms, sorted and unique

    bool operator==(const MatchedArticle&) const = default;
};

using TermTally = std::map<std::string, std::size_t>;
using DemographicCell = std::pair<AgeGroup, Gender>;
using DemographicTally = std::map<DemographicCell, std::size_t>;

/// Data-parallel kernels behind the stats operations. `omp` and `serial` produce identical
/// results; `serial` is the reference kept for tests and benchmarks.
namespace kernels {

namespace serial {
[[nodiscard]] std::vector<RecordId> filter(const Index& index, const QuerySpec& canonical,
                                           const std::vector<RecordId>& candidates);
[[nodiscard]] std::vector<MatchedArticle> collapse(const Index& index, TermKind kind,
                                                   const std::vector<RecordId>& matched);
[[nodiscard]] TermTally count_terms(const std::vector<MatchedArticle>& articles);
[[nodiscard]] DemographicTally count_demographics(const std::vector<MatchedArticle>& articles);
}  // namespace serial

namespace omp {
[[nodiscard]] std::vector<RecordId> filter(const Index& index, const QuerySpec& canonical,
                                           const std::vector<RecordId>& candidates);
[[nodiscard]] std::vector<MatchedArticle> collapse(const Index& index, TermKind kind,
                                                   const std::vector<RecordId>& matched);
[[nodiscard]] TermTally count_terms(const std::vector<MatchedArticle>& articles);
[[nodiscard]] DemographicTally count_demographics(const std::vector<MatchedArticle>& articles);
}  // namespace omp

}  // namespace kernels

}  // namespace drugwatch
