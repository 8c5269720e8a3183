#pragma once

#include "drugwatch/event.hpp"
#include "drugwatch/normalize.hpp"

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace drugwatch {

/// Article-level, per-drug merged extraction result.
struct NormalizedEventRecord {
    std::string pmid;
    std::string drug;
    std::set<std::string> effects;
    AgeValue age;
    Gender gender = Gender::Unknown;
    std::optional<int> year;
    std::vector<std::pair<std::size_t, std::size_t>> source_sentences;  // (sentence index, event ordinal)

    bool operator==(const NormalizedEventRecord&) const = default;
};

[[nodiscard]] nlohmann::ordered_json to_json(const NormalizedEventRecord& r);
/// Throws SchemaError on a missing or mistyped field.
[[nodiscard]] NormalizedEventRecord record_from_json(const nlohmann::json& j);

/// Record store file: one compact JSON object per line.
void write_records(std::ostream& out, const std::vector<NormalizedEventRecord>& records);
/// Throws SchemaError naming the line on bad input.
[[nodiscard]] std::vector<NormalizedEventRecord> read_records(std::istream& in);
[[nodiscard]] std::vector<NormalizedEventRecord> load_records(const std::string& path);

/// Events extracted from one sentence of an article.
struct SentenceEvents {
    std::size_t sentence_index = 0;
    std::vector<PharmaEvent> events;
};

struct MergeResult {
    std::vector<NormalizedEventRecord> records;  // ordered by drug
    std::size_t events_without_drug = 0;
};

/// One record per distinct canonical drug. Effects are the union over events naming the drug.
/// Age and gender are resolved per article: the most specific non-unknown value wins
/// (exact > range > unknown), ties go to the earliest sentence, then event, then span.
/// Events without a usable treatment.drug are counted and dropped.
[[nodiscard]] MergeResult merge_by_drug(const std::string& pmid, std::optional<int> year,
                                        const std::vector<SentenceEvents>& article,
                                        const SynonymDictionary& synonyms = {});

}  // namespace drugwatch
