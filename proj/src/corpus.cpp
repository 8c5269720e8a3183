#include "drugwatch/corpus.hpp"

#include "drugwatch/text.hpp"

#include <array>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace drugwatch {

namespace {

using json = nlohmann::json;

constexpr std::array<std::string_view, 4> kAdverseKeywords = {
    "adverse event", "adverse effect", "adverse reaction", "side effect"};

constexpr std::array<std::string_view, 6> kAbbreviations = {
    "e.g.", "i.e.", "vs.", "dr.", "fig.", "et al."};

std::string string_field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return {};
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number_integer()) return std::to_string(it->get<long long>());
    throw std::invalid_argument(std::string("field '") + key + "' is not a string");
}

std::vector<std::string> list_field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return {};
    if (it->is_string()) return {it->get<std::string>()};
    if (!it->is_array()) throw std::invalid_argument(std::string("field '") + key + "' is not a list");
    std::vector<std::string> out;
    for (const auto& v : *it) {
        if (!v.is_string()) throw std::invalid_argument(std::string("field '") + key + "' has a non-string entry");
        out.push_back(v.get<std::string>());
    }
    return out;
}

int year_field(const json& obj) {
    auto it = obj.find("year");
    if (it == obj.end() || it->is_null()) throw std::invalid_argument("missing 'year'");
    if (it->is_number_integer()) return it->get<int>();
    if (it->is_string()) {
        const std::string s = it->get<std::string>();
        std::size_t used = 0;
        int y = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument("non-numeric 'year'");
        return y;
    }
    throw std::invalid_argument("'year' is not an integer");
}

CaseReport parse_record(std::string_view line) {
    json obj = json::parse(line);
    if (!obj.is_object()) throw std::invalid_argument("record is not an object");
    CaseReport r;
    r.pmid = std::string(text::trim(string_field(obj, "pmid")));
    if (r.pmid.empty()) throw std::invalid_argument("missing 'pmid'");
    r.title = string_field(obj, "title");
    r.abstract = string_field(obj, "abstract");
    r.pub_year = year_field(obj);
    r.keywords = list_field(obj, "keywords");
    auto lang = list_field(obj, "language");
    r.language = lang.empty() ? std::string{} : lang.front();
    r.pub_types = list_field(obj, "pub_types");
    return r;
}

bool is_english(std::string_view lang) {
    const std::string l = text::lower(text::trim(lang));
    return l == "en" || l == "eng" || l == "english";
}

bool is_case_report(const std::vector<std::string>& types) {
    for (const auto& t : types) {
        const std::string l = text::lower(text::trim(t));
        if (l == "case reports" || l == "case report") return true;
    }
    return false;
}

bool mentions_adverse_keyword(const CaseReport& r) {
    std::string hay = text::lower(r.title) + "\n" + text::lower(r.abstract);
    for (const auto& k : r.keywords) hay += "\n" + text::lower(k);
    for (auto kw : kAdverseKeywords)
        if (hay.find(kw) != std::string::npos) return true;
    return false;
}

bool ends_with_abbreviation(std::string_view s, std::size_t period_pos) {
    // s[period_pos] == '.'
    const std::string_view head = s.substr(0, period_pos + 1);
    for (auto abbr : kAbbreviations) {
        if (head.size() < abbr.size()) continue;
        const std::size_t start = head.size() - abbr.size();
        if (text::lower(head.substr(start)) != abbr) continue;
        if (start == 0 || !text::is_alnum(head[start - 1])) return true;
    }
    return false;
}

}  // namespace

void to_json(nlohmann::ordered_json& j, const CaseReport& r) {
    j = nlohmann::ordered_json{{"pmid", r.pmid},         {"title", r.title},
                               {"abstract", r.abstract}, {"year", r.pub_year},
                               {"keywords", r.keywords}, {"language", r.language},
                               {"pub_types", r.pub_types}};
}

IngestResult parse_corpus(std::istream& in, const IngestOptions& options) {
    IngestResult result;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        CaseReport r;
        try {
            r = parse_record(line);
        } catch (const std::exception& e) {
            ++result.malformed;
            result.issues.push_back({lineno, std::string("malformed record: ") + e.what()});
            continue;
        }
        std::string reason;
        if (!is_english(r.language)) reason = "language is not English";
        else if (!is_case_report(r.pub_types)) reason = "publication type is not Case Reports";
        else if (text::trim(r.abstract).empty()) reason = "missing abstract";
        else if (r.pub_year < 1800 || r.pub_year > 2100) reason = "publication year out of range";
        else if (options.keyword_filter && !mentions_adverse_keyword(r)) reason = "no adverse-event keyword";
        else if (seen.count(r.pmid)) reason = "duplicate pmid " + r.pmid;

        if (!reason.empty()) {
            ++result.rejected;
            result.issues.push_back({lineno, reason});
            continue;
        }
        seen.insert(r.pmid);
        result.reports.push_back(std::move(r));
        ++result.accepted;
    }
    return result;
}

std::vector<CaseReport> merge_corpus(std::vector<CaseReport> existing,
                                     const std::vector<CaseReport>& incoming) {
    std::unordered_map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < existing.size(); ++i) position.emplace(existing[i].pmid, i);
    for (const auto& r : incoming) {
        auto it = position.find(r.pmid);
        if (it != position.end()) {
            existing[it->second] = r;
        } else {
            position.emplace(r.pmid, existing.size());
            existing.push_back(r);
        }
    }
    return existing;
}

std::vector<Sentence> split_sentences(std::string_view abstract, std::string_view pmid) {
    std::vector<Sentence> out;
    auto emit = [&](std::size_t b, std::size_t e) {
        while (b < e && text::is_space(abstract[b])) ++b;
        while (e > b && text::is_space(abstract[e - 1])) --e;
        if (b == e) return;
        out.push_back(Sentence{std::string(pmid), out.size(), std::string(abstract.substr(b, e - b)), b, e});
    };

    std::size_t start = 0;
    for (std::size_t i = 0; i < abstract.size(); ++i) {
        const char c = abstract[i];
        if (c != '.' && c != '!' && c != '?') continue;
        std::size_t j = i + 1;
        while (j < abstract.size() && text::is_space(abstract[j])) ++j;
        if (j == i + 1 || j >= abstract.size()) continue;
        if (!text::is_upper(abstract[j]) && !text::is_digit(abstract[j])) continue;
        if (c == '.' && ends_with_abbreviation(abstract, i)) continue;
        emit(start, i + 1);
        start = j;
        i = j - 1;
    }
    emit(start, abstract.size());
    if (out.empty()) out.push_back(Sentence{std::string(pmid), 0, std::string(abstract), 0, abstract.size()});
    return out;
}

}  // namespace drugwatch
