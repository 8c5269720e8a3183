#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace drugwatch {

/// One publication record of the case-report corpus.
struct CaseReport {
    std::string pmid;
    std::string title;
    std::string abstract;
    int pub_year = 0;
    std::vector<std::string> keywords;
    std::string language;
    std::vector<std::string> pub_types;

    bool operator==(const CaseReport&) const = default;
};

void to_json(nlohmann::ordered_json& j, const CaseReport& r);

struct IngestOptions {
    /// Require one of the adverse-event retrieval phrases in title, abstract or keywords.
    /// Off by default: corpora are assumed to be pre-filtered at retrieval time.
    bool keyword_filter = false;
};

struct LineIssue {
    std::size_t line = 0;  // 1-based
    std::string reason;
};

struct IngestResult {
    std::vector<CaseReport> reports;
    std::size_t accepted = 0;
    std::size_t rejected = 0;      // well-formed records failing a filter or duplicate pmid
    std::size_t malformed = 0;     // lines that could not be parsed at all
    std::vector<LineIssue> issues; // one entry per rejected or malformed line
};

/// Parses a line-delimited corpus. Blank lines are skipped. Never throws on bad records;
/// every rejection is reported in `issues`.
[[nodiscard]] IngestResult parse_corpus(std::istream& in, const IngestOptions& options = {});

/// Append-with-dedup: every report in `incoming` replaces an existing one with the same pmid;
/// the rest are appended in order.
[[nodiscard]] std::vector<CaseReport> merge_corpus(std::vector<CaseReport> existing,
                                                   const std::vector<CaseReport>& incoming);

struct Sentence {
    std::string pmid;
    std::size_t index = 0;
    std::string text;
    std::size_t begin = 0;  // [begin, end) into the abstract
    std::size_t end = 0;

    bool operator==(const Sentence&) const = default;
};

/// Splits after '.', '!' or '?' when followed by whitespace and then an uppercase letter or
/// a digit, except after an allowlisted abbreviation. Leading/trailing whitespace and the
/// whitespace between sentences fall outside the spans, so the spans plus the gaps reproduce
/// the input exactly.
[[nodiscard]] std::vector<Sentence> split_sentences(std::string_view abstract,
                                                    std::string_view pmid = {});

}  // namespace drugwatch
