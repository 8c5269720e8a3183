#include "drugwatch/record.hpp"

#include "drugwatch/error.hpp"
#include "drugwatch/text.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <tuple>

namespace drugwatch {

namespace {

std::string_view age_kind_name(AgeValue::Kind k) {
    switch (k) {
        case AgeValue::Kind::Exact: return "exact";
        case AgeValue::Kind::Range: return "range";
        case AgeValue::Kind::Unknown: break;
    }
    return "unknown";
}

int specificity(const AgeValue& a) {
    switch (a.kind) {
        case AgeValue::Kind::Exact: return 2;
        case AgeValue::Kind::Range: return 1;
        case AgeValue::Kind::Unknown: break;
    }
    return 0;
}

}  // namespace

nlohmann::ordered_json to_json(const NormalizedEventRecord& r) {
    nlohmann::ordered_json age = {{"kind", age_kind_name(r.age.kind)}};
    if (r.age.kind != AgeValue::Kind::Unknown) {
        age["lo"] = r.age.lo;
        age["hi"] = r.age.hi;
        age["hi_open"] = r.age.hi_open;
    }
    auto sources = nlohmann::ordered_json::array();
    for (const auto& [s, e] : r.source_sentences) sources.push_back({s, e});
    nlohmann::ordered_json j;
    j["pmid"] = r.pmid;
    j["drug"] = r.drug;
    j["effects"] = r.effects;
    j["age"] = std::move(age);
    j["gender"] = to_string(r.gender);
    j["year"] = r.year ? nlohmann::ordered_json(*r.year) : nlohmann::ordered_json(nullptr);
    j["source_sentences"] = std::move(sources);
    return j;
}

NormalizedEventRecord record_from_json(const nlohmann::json& j) {
    try {
        NormalizedEventRecord r;
        r.pmid = j.at("pmid").get<std::string>();
        r.drug = j.at("drug").get<std::string>();
        if (r.pmid.empty() || r.drug.empty()) throw SchemaError("pmid and drug must be non-empty");
        for (const auto& e : j.at("effects")) r.effects.insert(e.get<std::string>());
        const auto& age = j.at("age");
        const std::string kind = age.at("kind").get<std::string>();
        if (kind == "exact") {
            r.age = AgeValue::exact(age.at("lo").get<double>());
        } else if (kind == "range") {
            r.age = AgeValue::range(age.at("lo").get<double>(), age.at("hi").get<double>(),
                                    age.value("hi_open", false));
        } else if (kind != "unknown") {
            throw SchemaError("unknown age kind '" + kind + "'");
        }
        auto g = parse_gender(j.at("gender").get<std::string>());
        if (!g) throw SchemaError("unknown gender '" + j.at("gender").get<std::string>() + "'");
        r.gender = *g;
        if (auto y = j.find("year"); y != j.end() && !y->is_null()) r.year = y->get<int>();
        if (auto s = j.find("source_sentences"); s != j.end())
            for (const auto& pair : *s) r.source_sentences.emplace_back(pair.at(0).get<std::size_t>(), pair.at(1).get<std::size_t>());
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("bad record: ") + e.what());
    }
}

void write_records(std::ostream& out, const std::vector<NormalizedEventRecord>& records) {
    for (const auto& r : records) out << to_json(r).dump() << '\n';
}

std::vector<NormalizedEventRecord> read_records(std::istream& in) {
    std::vector<NormalizedEventRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        try {
            out.push_back(record_from_json(nlohmann::json::parse(line)));
        } catch (const std::exception& e) {
            throw SchemaError("record store line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

std::vector<NormalizedEventRecord> load_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return read_records(in);
}

MergeResult merge_by_drug(const std::string& pmid, std::optional<int> year,
                          const std::vector<SentenceEvents>& article, const SynonymDictionary& synonyms) {
    struct Source {
        std::size_t sentence, ordinal, span;
    };
    MergeResult result;
    std::map<std::string, NormalizedEventRecord> by_drug;

    AgeValue best_age;
    std::optional<Source> best_age_src;
    Gender best_gender = Gender::Unknown;
    std::optional<Source> best_gender_src;
    auto earlier = [](const Source& a, const Source& b) {
        return std::tie(a.sentence, a.ordinal, a.span) < std::tie(b.sentence, b.ordinal, b.span);
    };

    for (const auto& sent : article) {
        for (std::size_t ord = 0; ord < sent.events.size(); ++ord) {
            const PharmaEvent& ev = sent.events[ord];

            const auto& ages = ev.spans(Role::SubjectAge);
            for (std::size_t k = 0; k < ages.size(); ++k) {
                const AgeValue a = normalize_age(ages[k].text);
                const Source src{sent.sentence_index, ord, k};
                if (specificity(a) > specificity(best_age) ||
                    (specificity(a) == specificity(best_age) && a.kind != AgeValue::Kind::Unknown &&
                     best_age_src && earlier(src, *best_age_src))) {
                    best_age = a;
                    best_age_src = src;
                }
            }
            const auto& genders = ev.spans(Role::SubjectGender);
            for (std::size_t k = 0; k < genders.size(); ++k) {
                const Gender g = normalize_gender(genders[k].text);
                const Source src{sent.sentence_index, ord, k};
                if (g != Gender::Unknown && (!best_gender_src || earlier(src, *best_gender_src))) {
                    best_gender = g;
                    best_gender_src = src;
                }
            }

            std::set<std::string> drugs;
            for (const auto& s : ev.spans(Role::TreatmentDrug)) {
                try {
                    drugs.insert(normalize_term(s.text, TermKind::Drug, synonyms));
                } catch (const Error&) {
                }
            }
            if (drugs.empty()) {
                ++result.events_without_drug;
                continue;
            }
            std::set<std::string> effects;
            for (const auto& s : ev.spans(Role::Effect)) {
                try {
                    effects.insert(normalize_term(s.text, TermKind::Effect, synonyms));
                } catch (const Error&) {
                }
            }
            for (const auto& d : drugs) {
                auto& rec = by_drug[d];
                rec.drug = d;
                rec.effects.insert(effects.begin(), effects.end());
                rec.source_sentences.emplace_back(sent.sentence_index, ord);
            }
        }
    }

    for (auto& [drug, rec] : by_drug) {
        rec.pmid = pmid;
        rec.year = year;
        rec.age = best_age;
        rec.gender = best_gender;
        std::sort(rec.source_sentences.begin(), rec.source_sentences.end());
        rec.source_sentences.erase(std::unique(rec.source_sentences.begin(), rec.source_sentences.end()),
                                   rec.source_sentences.end());
        result.records.push_back(std::move(rec));
    }
    return result;
}

}  // namespace drugwatch
