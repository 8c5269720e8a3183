#include "drugwatch/extractor.hpp"

#include "drugwatch/json_repair.hpp"
#include "drugwatch/model_json.hpp"
#include "drugwatch/normalize.hpp"
#include "drugwatch/text.hpp"

#include <algorithm>

#include <json.hpp>

namespace drugwatch {

Lexicon::Lexicon(const std::vector<std::string>& terms) {
    for (const auto& t : terms) {
        std::string term = text::lower(text::trim(t));
        if (term.empty()) continue;
        max_length_ = std::max(max_length_, term.size());
        terms_.insert(std::move(term));
    }
}

Lexicon Lexicon::load(const std::string& path) {
    std::vector<std::string> terms;
    for (const auto& line : text::split_lines(text::read_file(path))) {
        auto t = text::trim(line);
        if (t.empty() || t.front() == '#') continue;
        terms.emplace_back(t);
    }
    return Lexicon(terms);
}

std::vector<std::pair<std::size_t, std::size_t>> Lexicon::scan(std::string_view sentence) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::string s = text::lower(sentence);
    const std::size_t n = s.size();
    std::size_t i = 0;
    while (i < n) {
        if (i > 0 && text::is_word_char(s[i - 1]) && text::is_word_char(s[i])) {
            ++i;
            continue;
        }
        std::size_t found = 0;
        for (std::size_t j = std::min(n, i + max_length_); j > i; --j) {
            if (!text::at_word_boundaries(s, i, j)) continue;
            if (terms_.count(std::string_view(s).substr(i, j - i))) {
                found = j;
                break;
            }
        }
        if (found) {
            out.emplace_back(i, found);
            i = found;
        } else {
            ++i;
        }
    }
    return out;
}

RuleBasedExtractor::RuleBasedExtractor(Lexicons lexicons) : lexicons_(std::move(lexicons)) {
    if (lexicons_.drugs.empty()) throw Error("rule-based extractor requires a drug lexicon");
    if (lexicons_.effects.empty()) throw Error("rule-based extractor requires an effect lexicon");
}

ExtractionResult RuleBasedExtractor::extract(std::string_view sentence) const {
    ExtractionResult result;
    const auto drugs = lexicons_.drugs.scan(sentence);
    const auto effects = lexicons_.effects.scan(sentence);
    if (!drugs.empty() && !effects.empty()) {
        auto span = [&](std::size_t b, std::size_t e) {
            return Span{std::string(sentence.substr(b, e - b)), b, e};
        };
        PharmaEvent ev;
        ev.event_type = EventType::ADE;

        std::optional<std::pair<std::size_t, std::size_t>> age = find_age_expression(sentence);
        std::optional<std::pair<std::size_t, std::size_t>> gender;
        {
            std::size_t i = 0;
            while (i < sentence.size() && !gender) {
                if (!text::is_alnum(sentence[i])) {
                    ++i;
                    continue;
                }
                std::size_t j = i;
                while (j < sentence.size() && text::is_alnum(sentence[j])) ++j;
                if (text::at_word_boundaries(sentence, i, j) && gender_keyword(text::lower(sentence.substr(i, j - i))))
                    gender = std::make_pair(i, j);
                i = j;
            }
        }
        if (age || gender) {
            std::size_t b = sentence.size(), e = 0;
            for (const auto& p : {age, gender}) {
                if (!p) continue;
                b = std::min(b, p->first);
                e = std::max(e, p->second);
            }
            ev.args[Role::Subject].push_back(span(b, e));
            if (age) ev.args[Role::SubjectAge].push_back(span(age->first, age->second));
            if (gender) ev.args[Role::SubjectGender].push_back(span(gender->first, gender->second));
        }
        for (const auto& [b, e] : drugs) {
            ev.args[Role::Treatment].push_back(span(b, e));
            ev.args[Role::TreatmentDrug].push_back(span(b, e));
        }
        for (const auto& [b, e] : effects) ev.args[Role::Effect].push_back(span(b, e));
        result.events.push_back(std::move(ev));
    }
    result.raw = events_to_json(result.events).dump();
    return result;
}

RemoteExtractor::RemoteExtractor(RemoteConfig config, std::shared_ptr<HttpTransport> transport)
    : config_(std::move(config)),
      transport_(std::move(transport)),
      in_flight_(std::make_shared<std::counting_semaphore<>>(
          static_cast<std::ptrdiff_t>(std::max<std::size_t>(1, config_.max_in_flight)))) {
    if (config_.endpoint.empty()) throw Error("remote extractor requires an endpoint URL");
    if (!transport_) transport_ = std::make_shared<HttplibTransport>();
}

ExtractionResult RemoteExtractor::extract(std::string_view sentence) const {
    const std::string request =
        nlohmann::json{{"sentence", std::string(sentence)}, {"model", config_.model}}.dump();

    HttpResponse response;
    in_flight_->acquire();
    try {
        response = transport_->post(config_.endpoint, request, "application/json", config_.timeout);
    } catch (const TransportError& e) {
        in_flight_->release();
        throw RemoteError(e.what(), true);
    } catch (...) {
        in_flight_->release();
        throw;
    }
    in_flight_->release();

    if (response.status < 200 || response.status >= 300) {
        const bool retriable = response.status == 429 || response.status >= 500;
        throw RemoteError("remote extractor returned HTTP " + std::to_string(response.status), retriable,
                          response.body);
    }

    ExtractionResult result;
    result.raw = response.body;
    try {
        auto parsed = parse_model_json(repair_json(response.body));
        result.events = std::move(parsed.events);
        result.warnings = std::move(parsed.warnings);
    } catch (const Error& e) {
        throw RemoteError(std::string("unusable remote response: ") + e.what(), false, response.body);
    }
    return result;
}

}  // namespace drugwatch
