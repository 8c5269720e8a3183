#pragma once

#include "drugwatch/event.hpp"
#include "drugwatch/index.hpp"
#include "drugwatch/record.hpp"

#include <random>
#include <string>
#include <vector>

#include <json.hpp>

namespace testsupport {

using Rng = std::mt19937_64;

/// Valid event with trimmed, non-empty spans and no offsets. With `brackets`, spans may
/// contain tag-like text such as "[SUBJECT]" to exercise escaping.
drugwatch::PharmaEvent random_event(Rng& rng, bool brackets = false);

/// Random JSON value, depth-limited, with strings holding escapes and non-ASCII text.
nlohmann::json random_json(Rng& rng, int depth = 3);

/// Serialization in one of several layouts (compact, indented, ASCII-escaped).
std::string random_serialization(Rng& rng, const nlohmann::json& j);

struct CorpusShape {
    std::size_t records = 500;
    std::size_t drugs = 25;
    std::size_t effects = 40;
};

/// Record store with one demographic profile per pmid and unique (pmid, drug) keys.
std::vector<drugwatch::NormalizedEventRecord> random_records(Rng& rng, const CorpusShape& shape);

std::string drug_name(std::size_t i);
std::string effect_name(std::size_t i);

drugwatch::QuerySpec random_query(Rng& rng, const CorpusShape& shape);

}  // namespace testsupport
