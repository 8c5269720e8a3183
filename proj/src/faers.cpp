#include "drugwatch/faers.hpp"

#include "drugwatch/text.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <thread>

#include <json.hpp>
#include <openssl/evp.h>

namespace drugwatch::faers {

namespace {

std::string_view search_field(SearchKind k) {
    switch (k) {
        case SearchKind::GenericName: return "patient.drug.openfda.generic_name";
        case SearchKind::BrandName: return "patient.drug.openfda.brand_name";
        case SearchKind::Reaction: break;
    }
    return "patient.reaction.reactionmeddrapt";
}

std::string_view count_field_name(CountField f) {
    switch (f) {
        case CountField::Reaction: return "patient.reaction.reactionmeddrapt.exact";
        case CountField::GenericName: return "patient.drug.openfda.generic_name.exact";
        case CountField::BrandName: return "patient.drug.openfda.brand_name.exact";
        case CountField::ReceiveDate: return "receivedate";
        case CountField::PatientSex: return "patient.patientsex";
        case CountField::OnsetAge: break;
    }
    return "patient.patientonsetage";
}

bool same_field(SearchKind k, CountField f) {
    return (k == SearchKind::GenericName && f == CountField::GenericName) ||
           (k == SearchKind::BrandName && f == CountField::BrandName) ||
           (k == SearchKind::Reaction && f == CountField::Reaction);
}

/// Percent-encoding for a quoted phrase; spaces become '+'.
std::string encode_phrase(std::string_view s) {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    for (char c : s) {
        const auto u = static_cast<unsigned char>(c);
        if (text::is_alnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out.push_back(c);
        } else if (c == ' ') {
            out.push_back('+');
        } else {
            out.push_back('%');
            out.push_back(kHex[u >> 4]);
            out.push_back(kHex[u & 0xF]);
        }
    }
    return out;
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

bool is_date(const std::string& s) {
    return s.size() == 8 && std::all_of(s.begin(), s.end(), [](char c) { return text::is_digit(c); });
}

int sex_code(Gender g) {
    switch (g) {
        case Gender::Male: return 1;
        case Gender::Female: return 2;
        case Gender::Unknown: break;
    }
    return 0;
}

}  // namespace

double to_years(double value, AgeUnit unit) noexcept {
    switch (unit) {
        case AgeUnit::Decade: return value * 10.0;
        case AgeUnit::Year: return value;
        case AgeUnit::Month: return value / 12.0;
        case AgeUnit::Week: return value / 52.0;
        case AgeUnit::Day: return value / 365.0;
        case AgeUnit::Hour: return value / (365.0 * 24.0);
    }
    return value;
}

std::string build_count_request(const FaersQuery& q, const std::string& base) {
    const std::string term(text::trim(q.term));
    if (term.empty()) throw Error("FAERS query term is empty");
    if (q.limit < 1 || q.limit > 1000) throw Error("FAERS limit must be in [1, 1000]");
    if (same_field(q.kind, q.count_field)) throw Error("FAERS count field duplicates the search field");

    std::string search;
    search += search_field(q.kind);
    search += ":\"" + encode_phrase(term) + "\"";
    if (q.sex) search += "+AND+patient.patientsex:" + std::to_string(sex_code(*q.sex));
    if (q.onset_age) {
        const auto& a = *q.onset_age;
        if (a.lo < 0 || a.lo > a.hi) throw Error("FAERS onset-age range is empty or negative");
        const int unit = static_cast<int>(a.unit);
        if (unit < 800 || unit > 805) throw Error("unknown FAERS onset-age unit " + std::to_string(unit));
        search += "+AND+patient.patientonsetage:[" + format_number(a.lo) + "+TO+" + format_number(a.hi) + "]";
        search += "+AND+patient.patientonsetageunit:" + std::to_string(unit);
    }
    if (q.country) {
        const std::string c(text::trim(*q.country));
        if (c.empty()) throw Error("FAERS country filter is empty");
        search += "+AND+occurcountry:\"" + encode_phrase(c) + "\"";
    }
    if (q.received) {
        const auto& [from, to] = *q.received;
        if (!is_date(from) || !is_date(to) || from > to) throw Error("FAERS receivedate range must be YYYYMMDD, from <= to");
        search += "+AND+receivedate:[" + from + "+TO+" + to + "]";
    }

    std::string url = base + "/drug/event.json?search=" + search + "&count=" + std::string(count_field_name(q.count_field));
    if (q.count_field != CountField::ReceiveDate) url += "&limit=" + std::to_string(q.limit);
    return url;
}

FaersCountResult parse_count_response(std::string_view body) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("FAERS response is not JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("FAERS response: expected an object");
    auto results = doc.find("results");
    if (results == doc.end() || !results->is_array()) throw SchemaError("FAERS response: missing 'results' array");

    FaersCountResult out;
    long long sum = 0;
    for (std::size_t i = 0; i < results->size(); ++i) {
        const auto& e = (*results)[i];
        const std::string path = "results[" + std::to_string(i) + "]";
        if (!e.is_object()) throw SchemaError(path + ": expected an object");
        CountEntry entry;
        auto key = e.contains("term") ? e.find("term") : e.find("time");
        if (key == e.end()) throw SchemaError(path + ": missing 'term' or 'time'");
        if (key->is_string()) entry.key = key->get<std::string>();
        else if (key->is_number_integer()) entry.key = std::to_string(key->get<long long>());
        else throw SchemaError(path + ": key is neither string nor integer");
        auto count = e.find("count");
        if (count == e.end() || !count->is_number_integer() || count->get<long long>() <= 0)
            throw SchemaError(path + ": 'count' must be a positive integer");
        entry.count = count->get<long long>();
        sum += entry.count;
        out.entries.push_back(std::move(entry));
    }
    out.total = sum;
    if (auto meta = doc.find("meta"); meta != doc.end() && meta->is_object()) {
        if (auto d = meta->find("disclaimer"); d != meta->end() && d->is_string()) out.disclaimer = d->get<std::string>();
        if (auto r = meta->find("results"); r != meta->end() && r->is_object())
            if (auto t = r->find("total"); t != r->end() && t->is_number_integer()) out.total = t->get<long long>();
    }
    return out;
}

std::string sha1_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha1(), nullptr) != 1) throw Error("SHA-1 failed");
    std::string out;
    char buf[3];
    for (unsigned i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        out += buf;
    }
    return out;
}

Client::Client(ClientConfig config, std::shared_ptr<HttpTransport> transport, Sleeper sleep)
    : config_(std::move(config)), transport_(std::move(transport)), sleep_(std::move(sleep)) {
    if (!transport_ && config_.mode == Mode::Live) transport_ = std::make_shared<HttplibTransport>();
    if (!sleep_) sleep_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
    if (!config_.api_key)
        if (const char* key = std::getenv(kApiKeyEnv); key && *key) config_.api_key = key;
}

FaersCountResult Client::fetch_counts(const FaersQuery& q) const {
    const std::string url = build_count_request(q, config_.base);

    if (config_.mode == Mode::Fixture) {
        const auto path = std::filesystem::path(config_.fixture_dir) / (sha1_hex(url) + ".json");
        if (!std::filesystem::exists(path)) throw Error("no recorded FAERS response for " + url);
        return parse_count_response(text::read_file(path.string()));
    }

    const std::string live_url = config_.api_key ? url + "&api_key=" + encode_phrase(*config_.api_key) : url;
    auto backoff = config_.initial_backoff;
    for (int attempt = 1;; ++attempt) {
        const HttpResponse resp = transport_->get(live_url, config_.timeout);
        if (resp.status == 200) return parse_count_response(resp.body);
        if (resp.status == 404) return FaersCountResult{};
        if (resp.status != 429) throw Error("FAERS request failed with HTTP " + std::to_string(resp.status));
        if (attempt >= config_.max_attempts)
            throw QuotaError("FAERS rate limit still exceeded after " + std::to_string(attempt) + " attempts");
        sleep_(backoff);
        backoff *= 2;
    }
}

OnsetAgeFilter onset_filter_for(AgeGroup g) {
    switch (g) {
        case AgeGroup::Neonate: return {0, 27, AgeUnit::Day};
        case AgeGroup::Infant: return {28, 729, AgeUnit::Day};
        case AgeGroup::Child: return {2, 11, AgeUnit::Year};
        case AgeGroup::Adolescent: return {12, 17, AgeUnit::Year};
        case AgeGroup::Adult: return {18, 64, AgeUnit::Year};
        case AgeGroup::Elderly: return {65, 150, AgeUnit::Year};
        case AgeGroup::Unknown: break;
    }
    throw Error("the unknown age group has no FAERS onset-age filter");
}

AgeGroup age_group_for(double value, AgeUnit unit) {
    const double years = to_years(value, unit);
    if (!(years >= 0.0)) return AgeGroup::Unknown;
    return age_group_of(AgeValue::exact(years));
}

}  // namespace drugwatch::faers
