#pragma once

#include "drugwatch/classifier.hpp"
#include "drugwatch/corpus.hpp"
#include "drugwatch/extractor.hpp"
#include "drugwatch/normalize.hpp"
#include "drugwatch/record.hpp"

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace drugwatch {

/// Stage counts of one pipeline run.
struct RunReport {
    std::size_t articles_in = 0;
    std::size_t articles_ade = 0;     // articles with at least one ADE-positive sentence
    std::size_t sentences_total = 0;
    std::size_t sentences_ade = 0;
    std::size_t records_out = 0;
    std::size_t events_without_drug = 0;
    std::size_t extraction_failures = 0;

    bool operator==(const RunReport&) const = default;
    RunReport& operator+=(const RunReport& o);
};

[[nodiscard]] nlohmann::ordered_json to_json(const RunReport& r);

struct ExtractionFailure {
    std::string pmid;
    std::size_t sentence_index = 0;
    std::string message;

    bool operator==(const ExtractionFailure&) const = default;
};

struct PipelineOutput {
    std::vector<NormalizedEventRecord> records;  // corpus order, then drug order
    RunReport report;
    std::vector<ExtractionFailure> failures;
};

struct PipelineConfig {
    SynonymDictionary synonyms;
};

/// split -> classify -> extract (positive sentences only) -> normalize + merge by drug,
/// fanned out across documents with OpenMP. Output is identical to run_pipeline_serial.
[[nodiscard]] PipelineOutput run_pipeline(const std::vector<CaseReport>& corpus,
                                          const SentenceClassifier& classifier,
                                          const EventExtractor& extractor, const PipelineConfig& config);

/// Single-threaded reference implementation.
[[nodiscard]] PipelineOutput run_pipeline_serial(const std::vector<CaseReport>& corpus,
                                                 const SentenceClassifier& classifier,
                                                 const EventExtractor& extractor, const PipelineConfig& config);

/// Append-with-dedup for record stores: existing records of every pmid in `refreshed_pmids`
/// (and of every pmid in `incoming`) are dropped, then `incoming` is appended.
[[nodiscard]] std::vector<NormalizedEventRecord> merge_record_stores(
    const std::vector<NormalizedEventRecord>& existing, const std::vector<NormalizedEventRecord>& incoming,
    const std::vector<std::string>& refreshed_pmids = {});

}  // namespace drugwatch
