#include "drugwatch/service.hpp"

#include "drugwatch/error.hpp"
#include "drugwatch/metrics.hpp"
#include "drugwatch/model_json.hpp"
#include "drugwatch/stats.hpp"
#include "drugwatch/text.hpp"

#include <httplib.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

namespace drugwatch {

using ojson = nlohmann::ordered_json;

namespace {

class HttpError : public Error {
public:
    HttpError(int status, const std::string& what, ojson extra = ojson::object())
        : Error(what), status_(status), extra_(std::move(extra)) {}
    [[nodiscard]] int status() const noexcept { return status_; }
    [[nodiscard]] const ojson& extra() const noexcept { return extra_; }

private:
    int status_;
    ojson extra_;
};

Response json_response(const ojson& body, int status = 200) { return Response{status, body.dump(), "application/json"}; }

Response error_response(int status, const std::string& message, const ojson& extra = ojson::object()) {
    ojson body;
    body["error"] = message;
    body["code"] = status;
    for (const auto& [k, v] : extra.items()) body[k] = v;
    return json_response(body, status);
}

std::vector<std::string> all(const Request& req, const std::string& key) {
    std::vector<std::string> out;
    auto [b, e] = req.params.equal_range(key);
    for (auto it = b; it != e; ++it) out.push_back(it->second);
    return out;
}

std::optional<std::string> one(const Request& req, const std::string& key) {
    auto it = req.params.find(key);
    if (it == req.params.end()) return std::nullopt;
    return it->second;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value, T lo, T hi) {
    T out{};
    const char* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end || out < lo || out > hi)
        throw HttpError(400, "invalid value for '" + key + "': '" + value + "'");
    return out;
}

std::size_t size_param(const Request& req, const std::string& key, std::size_t def, std::size_t lo, std::size_t hi) {
    auto v = one(req, key);
    return v ? parse_number<std::size_t>(key, *v, lo, hi) : def;
}

bool flag_param(const Request& req, const std::string& key) {
    auto v = one(req, key);
    return v && (*v == "1" || *v == "true" || *v == "yes");
}

QuerySpec query_from(const Request& req) {
    QuerySpec q;
    if (auto k = one(req, "kind")) {
        auto kind = parse_term_kind(*k);
        if (!kind) throw HttpError(400, "unknown kind '" + *k + "'");
        q.kind = *kind;
    }
    q.terms = all(req, "term");
    q.cofilter = all(req, "cofilter");
    if (q.terms.empty()) throw HttpError(400, "at least one 'term' is required");
    if (auto g = one(req, "gender")) {
        auto gender = parse_gender(*g);
        if (!gender) throw HttpError(400, "unknown gender '" + *g + "'");
        q.gender = *gender;
    }
    if (auto a = one(req, "age")) q.age_exact = parse_number<double>("age", *a, 0.0, 150.0);
    if (auto a = one(req, "age_group")) {
        auto g = parse_age_group(*a);
        if (!g) throw HttpError(400, "unknown age group '" + *a + "'");
        q.age_group = *g;
    }
    auto from = one(req, "year_from");
    auto to = one(req, "year_to");
    if (from || to) {
        const int lo = from ? parse_number<int>("year_from", *from, 0, 9999) : 0;
        const int hi = to ? parse_number<int>("year_to", *to, 0, 9999) : 9999;
        q.year_range = std::pair{lo, hi};
    }
    return q;
}

ojson terms_json(const std::vector<TermCount>& terms) {
    ojson out = ojson::array();
    for (const auto& t : terms)
        out.push_back({{"term", t.term}, {"count", t.count}, {"proportion", t.proportion}, {"rarity_tier", t.rarity_tier}});
    return out;
}

struct Page {
    std::size_t offset;
    std::size_t page_size;
};

Page page_from(const Request& req) {
    return {size_param(req, "offset", 0, 0, std::numeric_limits<std::size_t>::max()),
            size_param(req, "page_size", 20, 1, 1000)};
}

template <typename T>
std::pair<typename std::vector<T>::const_iterator, typename std::vector<T>::const_iterator> page_range(
    const std::vector<T>& v, const Page& p) {
    const std::size_t b = std::min(p.offset, v.size());
    const std::size_t e = std::min(v.size(), b + p.page_size);
    return {v.begin() + static_cast<std::ptrdiff_t>(b), v.begin() + static_cast<std::ptrdiff_t>(e)};
}

void put_page(ojson& body, std::size_t total, const Page& p) {
    body["total"] = total;
    body["offset"] = p.offset;
    body["page_size"] = p.page_size;
}

enum class Source { PubMed, Faers };

Source source_from(const Request& req) {
    auto s = one(req, "source");
    if (!s || *s == "pubmed") return Source::PubMed;
    if (*s == "faers") return Source::Faers;
    throw HttpError(400, "unknown source '" + *s + "'");
}

std::optional<GroupSelector> group_from(const std::string& name) {
    if (auto g = parse_age_group(name); g && *g != AgeGroup::Unknown) return GroupSelector{*g};
    if (name == "unknown_age") return GroupSelector{AgeGroup::Unknown};
    if (auto g = parse_gender(name)) return GroupSelector{*g};
    return std::nullopt;
}

// FAERS side: one count request per demographic slice, mapped onto the shared axes.

struct FaersSlice {
    std::optional<AgeGroup> age;
    std::optional<Gender> sex;
};

faers::FaersQuery faers_query(const QuerySpec& c, const FaersSlice& slice, faers::CountField field, int limit) {
    faers::FaersQuery fq;
    fq.kind = c.kind == TermKind::Drug ? faers::SearchKind::GenericName : faers::SearchKind::Reaction;
    fq.term = c.terms.front();
    fq.count_field = field;
    fq.limit = limit;
    fq.sex = slice.sex ? slice.sex : c.gender;
    if (slice.age) fq.onset_age = faers::onset_filter_for(*slice.age);
    else if (c.age_group && *c.age_group != AgeGroup::Unknown) fq.onset_age = faers::onset_filter_for(*c.age_group);
    if (c.year_range)
        fq.received = std::pair{std::to_string(c.year_range->first * 10000 + 101),
                                std::to_string(c.year_range->second * 10000 + 1231)};
    return fq;
}

faers::CountField opposite_field(TermKind kind) {
    return kind == TermKind::Drug ? faers::CountField::Reaction : faers::CountField::GenericName;
}

void check_faers_query(const QuerySpec& c) {
    if (c.age_exact) throw HttpError(400, "the faers source supports 'age_group' but not an exact 'age'");
    if (c.age_group == AgeGroup::Unknown) throw HttpError(400, "the faers source has no unknown age group");
}

std::vector<AgeGroup> faers_age_axis(const QuerySpec& c) {
    if (c.age_group) return {*c.age_group};
    return age_groups();
}

std::vector<Gender> faers_sex_axis(const QuerySpec& c) {
    if (c.gender) return {*c.gender};
    return {Gender::Male, Gender::Female};
}

TermTally faers_tally(const faers::FaersCountResult& r) {
    TermTally t;
    for (const auto& e : r.entries) t[text::lower(e.key)] += static_cast<std::size_t>(e.count);
    return t;
}

faers::FaersCountResult fetch(const faers::Client* client, const faers::FaersQuery& q) {
    if (!client) throw HttpError(503, "faers source is not configured", {{"source", "faers"}, {"degraded", true}});
    try {
        return client->fetch_counts(q);
    } catch (const faers::QuotaError& e) {
        throw HttpError(503, e.what(), {{"source", "faers"}, {"degraded", true}});
    } catch (const HttpError&) {
        throw;
    } catch (const std::exception& e) {
        throw HttpError(502, e.what(), {{"source", "faers"}, {"degraded", true}});
    }
}

ojson parse_body(const Request& req) {
    try {
        auto j = ojson::parse(req.body);
        if (!j.is_object()) throw HttpError(400, "request body must be a JSON object");
        return j;
    } catch (const ojson::parse_error&) {
        throw HttpError(400, "request body is not valid JSON");
    }
}

std::string string_field(const ojson& body, const std::string& key) {
    auto it = body.find(key);
    if (it == body.end() || it->is_null()) return {};
    if (!it->is_string()) throw HttpError(400, "'" + key + "' must be a string");
    return it->get<std::string>();
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

bool row_matches(const BulkRow& row, std::optional<Role> role, const std::string& span_lower) {
    for (const auto& e : row.events) {
        for (const auto& [r, spans] : e.args) {
            if (role && r != *role) continue;
            if (span_lower.empty()) return true;
            for (const auto& s : spans)
                if (text::lower(s.text).find(span_lower) != std::string::npos) return true;
        }
    }
    return false;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

DrugInfoStore DrugInfoStore::parse(const ojson& cards) {
    if (!cards.is_array()) throw SchemaError("drug info store must be a JSON array");
    DrugInfoStore store;
    for (std::size_t i = 0; i < cards.size(); ++i) {
        const auto& c = cards[i];
        if (!c.is_object() || !c.contains("name") || !c["name"].is_string())
            throw SchemaError("$[" + std::to_string(i) + "]: card needs a string 'name'");
        store.cards_.push_back(c);
        std::vector<std::string> keys{c["name"].get<std::string>()};
        if (auto b = c.find("brands"); b != c.end() && b->is_array())
            for (const auto& brand : *b)
                if (brand.is_string()) keys.push_back(brand.get<std::string>());
        for (const auto& k : keys) {
            auto key = text::collapse_whitespace(text::lower(k));
            if (!store.by_name_.emplace(key, i).second && store.by_name_[key] != i)
                throw SchemaError("$[" + std::to_string(i) + "]: name '" + k + "' already used by another card");
        }
    }
    return store;
}

DrugInfoStore DrugInfoStore::load(const std::string& path) {
    try {
        return parse(ojson::parse(text::read_file(path)));
    } catch (const ojson::exception& e) {
        throw Error(path + ": " + e.what());
    } catch (const SchemaError& e) {
        throw Error(path + ": " + e.what());
    }
}

const ojson* DrugInfoStore::find(std::string_view name) const {
    auto it = by_name_.find(text::collapse_whitespace(text::lower(name)));
    return it == by_name_.end() ? nullptr : &cards_[it->second];
}

std::vector<Highlight> highlight_spans(std::string_view text, const std::vector<std::string>& terms) {
    std::vector<Highlight> found;
    std::set<std::string> seen;
    for (const auto& raw : terms) {
        auto term = text::collapse_whitespace(text::lower(raw));
        if (term.empty() || !seen.insert(term).second) continue;
        for (auto pos : text::find_word_occurrences(text, term)) found.push_back({pos, pos + term.size(), term});
    }
    std::sort(found.begin(), found.end(), [](const Highlight& a, const Highlight& b) {
        if (a.start != b.start) return a.start < b.start;
        if (a.end != b.end) return a.end > b.end;
        return a.term < b.term;
    });
    std::vector<Highlight> out;
    for (auto& h : found)
        if (out.empty() || h.start >= out.back().end) out.push_back(std::move(h));
    return out;
}

ApiService::ApiService(ServiceDeps deps) : deps_(std::move(deps)) {
    if (!deps_.index) throw Error("service needs an index");
    if (!deps_.sessions) deps_.sessions = std::make_shared<SessionStore>();
    for (std::size_t i = 0; i < deps_.articles.size(); ++i) article_by_pmid_[deps_.articles[i].pmid] = i;
    for (const auto& e : deps_.extractors) {
        if (!e) continue;
        if (!extractors_.emplace(e->name(), e).second) throw Error("duplicate extractor name '" + e->name() + "'");
    }
}

std::vector<std::string> ApiService::model_names() const {
    std::vector<std::string> out;
    for (const auto& [name, e] : extractors_) out.push_back(name);
    return out;
}

std::shared_ptr<const EventExtractor> ApiService::extractor(const std::string& name) const {
    auto it = extractors_.find(name);
    return it == extractors_.end() ? nullptr : it->second;
}

Response ApiService::handle(const Request& req) const {
    try {
        return route(req);
    } catch (const HttpError& e) {
        return error_response(e.status(), e.what(), e.extra());
    } catch (const InvalidQuery& e) {
        return error_response(400, e.what());
    } catch (const std::exception& e) {
        return error_response(500, e.what());
    }
}

Response ApiService::route(const Request& req) const {
    const std::string& p = req.path;
    const bool get = req.method == "GET";
    const bool post = req.method == "POST";
    auto only = [&](bool ok) {
        if (!ok) throw HttpError(405, "method " + req.method + " not allowed on " + p);
    };

    static const std::string kBulk = "/api/annotate/bulk";
    if (p == "/api/health") {
        only(get);
        return json_response({{"status", "ok"},
                              {"records", deps_.index->records().size()},
                              {"build_stamp", deps_.index->build_stamp()}});
    }
    if (p == "/api/suggest") return only(get), suggest(req);
    if (p == "/api/search") return only(get), search(req);
    if (p == "/api/demographics") return only(get), demographics(req);
    if (p == "/api/breakdown") return only(get), breakdown(req);
    if (p == "/api/crossbreakdown") return only(get), crossbreakdown(req);
    if (p == "/api/articles") return only(get), articles(req);
    if (p == "/api/druginfo") return only(get), druginfo(req);
    if (p == "/api/annotate/live") return only(post), annotate_live(req);
    if (p == kBulk) return only(post), bulk_upload(req);
    if (p.starts_with(kBulk + "/")) {
        std::string rest = p.substr(kBulk.size() + 1);
        static const std::string kCompare = "/compare";
        if (rest.ends_with(kCompare)) {
            rest.resize(rest.size() - kCompare.size());
            if (!rest.empty() && rest.find('/') == std::string::npos) return only(post), bulk_compare(req, rest);
        } else if (!rest.empty() && rest.find('/') == std::string::npos) {
            return only(get), bulk_results(req, rest);
        }
    }
    throw HttpError(404, "no endpoint at " + p);
}

Response ApiService::suggest(const Request& req) const {
    auto k = one(req, "kind");
    auto kind = parse_term_kind(k.value_or("drug"));
    if (!kind) throw HttpError(400, "unknown kind '" + *k + "'");
    auto prefix = one(req, "prefix").value_or("");
    if (text::trim(prefix).empty()) throw HttpError(400, "'prefix' must be at least one character");
    const std::size_t limit = size_param(req, "limit", 10, 1, 10);
    ojson body;
    body["kind"] = to_string(*kind);
    body["prefix"] = prefix;
    body["suggestions"] = deps_.index->suggest(*kind, prefix, limit);
    return json_response(body);
}

Response ApiService::search(const Request& req) const {
    const QuerySpec c = deps_.index->canonicalize(query_from(req));
    const Page page = page_from(req);
    const std::size_t n = size_param(req, "n", 50, 1, 1000);
    const auto pmids = search_articles(*deps_.index, c);
    const auto [b, e] = page_range(pmids, page);

    ojson body;
    body["kind"] = to_string(c.kind);
    body["terms"] = c.terms;
    body["cofilter"] = c.cofilter;
    put_page(body, pmids.size(), page);
    body["pmids"] = std::vector<std::string>(b, e);
    ojson yearly = ojson::object();
    for (const auto& [year, count] : yearly_counts(*deps_.index, c)) yearly[std::to_string(year)] = count;
    body["yearly"] = yearly;
    body["top_terms"] = terms_json(top_cooccurring(*deps_.index, c, n));
    return json_response(body);
}

Response ApiService::demographics(const Request& req) const {
    const QuerySpec c = deps_.index->canonicalize(query_from(req));
    ojson body;
    ojson cells = ojson::array();
    std::size_t total = 0;
    if (source_from(req) == Source::PubMed) {
        body["source"] = "pubmed";
        for (const auto& [cell, count] : demographic_distribution(*deps_.index, c)) {
            cells.push_back({{"age_group", to_string(cell.first)}, {"gender", to_string(cell.second)}, {"count", count}});
            total += count;
        }
    } else {
        check_faers_query(c);
        body["source"] = "faers";
        body["term"] = c.terms.front();
        for (AgeGroup g : faers_age_axis(c)) {
            auto r = fetch(deps_.faers.get(), faers_query(c, {g, std::nullopt}, faers::CountField::PatientSex, 3));
            std::map<Gender, std::size_t> by_sex;
            for (const auto& e : r.entries) {
                const Gender sex = e.key == "1" ? Gender::Male : e.key == "2" ? Gender::Female : Gender::Unknown;
                by_sex[sex] += static_cast<std::size_t>(e.count);
            }
            for (const auto& [sex, count] : by_sex) {
                cells.push_back({{"age_group", to_string(g)}, {"gender", to_string(sex)}, {"count", count}});
                total += count;
            }
        }
    }
    body["total"] = total;
    body["cells"] = cells;
    return json_response(body);
}

Response ApiService::breakdown(const Request& req) const {
    const QuerySpec c = deps_.index->canonicalize(query_from(req));
    const std::size_t n = size_param(req, "n", 10, 1, 100);
    std::vector<std::pair<std::string, GroupSelector>> groups;
    if (auto g = one(req, "group")) {
        auto sel = group_from(*g);
        if (!sel) throw HttpError(400, "unknown group '" + *g + "'");
        groups.emplace_back(*g, *sel);
    } else {
        for (AgeGroup g : age_groups()) groups.emplace_back(std::string(to_string(g)), g);
        for (Gender g : {Gender::Male, Gender::Female}) groups.emplace_back(std::string(to_string(g)), g);
    }

    ojson body;
    ojson out = ojson::object();
    if (source_from(req) == Source::PubMed) {
        body["source"] = "pubmed";
        for (const auto& [name, sel] : groups) out[name] = terms_json(group_breakdown(*deps_.index, c, sel, n));
    } else {
        check_faers_query(c);
        body["source"] = "faers";
        body["term"] = c.terms.front();
        for (const auto& [name, sel] : groups) {
            FaersSlice slice;
            if (const auto* age = std::get_if<AgeGroup>(&sel)) {
                if (*age == AgeGroup::Unknown) throw HttpError(400, "the faers source has no unknown age group");
                slice.age = *age;
            } else {
                slice.sex = std::get<Gender>(sel);
            }
            auto r = fetch(deps_.faers.get(), faers_query(c, slice, opposite_field(c.kind), static_cast<int>(n)));
            out[name] = terms_json(rank_terms(faers_tally(r), n));
        }
    }
    body["groups"] = out;
    return json_response(body);
}

Response ApiService::crossbreakdown(const Request& req) const {
    const QuerySpec c = deps_.index->canonicalize(query_from(req));
    const std::size_t k = size_param(req, "k", 10, 1, 100);
    ojson body;
    ojson cells = ojson::array();
    if (source_from(req) == Source::PubMed) {
        body["source"] = "pubmed";
        for (const auto& [cell, cc] : cross_breakdown(*deps_.index, c, k))
            cells.push_back({{"age_group", to_string(cell.first)},
                             {"gender", to_string(cell.second)},
                             {"total", cc.articles},
                             {"top", terms_json(cc.top)}});
    } else {
        check_faers_query(c);
        body["source"] = "faers";
        body["term"] = c.terms.front();
        for (AgeGroup g : faers_age_axis(c)) {
            for (Gender sex : faers_sex_axis(c)) {
                auto r = fetch(deps_.faers.get(), faers_query(c, {g, sex}, opposite_field(c.kind), static_cast<int>(k)));
                if (r.entries.empty()) continue;
                long long sum = 0;
                for (const auto& e : r.entries) sum += e.count;
                cells.push_back({{"age_group", to_string(g)},
                                 {"gender", to_string(sex)},
                                 {"total", sum},
                                 {"top", terms_json(rank_terms(faers_tally(r), k))}});
            }
        }
    }
    body["cells"] = cells;
    return json_response(body);
}

Response ApiService::articles(const Request& req) const {
    const QuerySpec q = query_from(req);
    const QuerySpec c = deps_.index->canonicalize(q);
    const Page page = page_from(req);

    std::vector<std::string> terms = q.terms;
    terms.insert(terms.end(), c.terms.begin(), c.terms.end());
    terms.insert(terms.end(), q.cofilter.begin(), q.cofilter.end());
    terms.insert(terms.end(), c.cofilter.begin(), c.cofilter.end());

    std::vector<const CaseReport*> found;
    for (const auto& pmid : search_articles(*deps_.index, c)) {
        auto it = article_by_pmid_.find(pmid);
        if (it != article_by_pmid_.end()) found.push_back(&deps_.articles[it->second]);
    }
    const auto [b, e] = page_range(found, page);

    ojson list = ojson::array();
    for (auto it = b; it != e; ++it) {
        const CaseReport& a = **it;
        ojson spans = ojson::array();
        for (const auto& h : highlight_spans(a.abstract, terms))
            spans.push_back({{"start", h.start}, {"end", h.end}, {"term", h.term}});
        list.push_back({{"pmid", a.pmid},
                        {"title", a.title},
                        {"abstract", a.abstract},
                        {"keywords", a.keywords},
                        {"year", a.pub_year},
                        {"url", "https://pubmed.ncbi.nlm.nih.gov/" + a.pmid + "/"},
                        {"highlights", spans}});
    }
    ojson body;
    put_page(body, found.size(), page);
    body["articles"] = list;
    return json_response(body);
}

Response ApiService::druginfo(const Request& req) const {
    auto name = one(req, "name").value_or("");
    if (text::trim(name).empty()) throw HttpError(400, "'name' is required");
    const ojson* card = deps_.druginfo.find(name);
    if (!card) throw HttpError(404, "no drug information for '" + name + "'");
    return json_response(*card);
}

Response ApiService::annotate_live(const Request& req) const {
    const ojson body = parse_body(req);
    const std::string sentence = string_field(body, "sentence");
    if (text::trim(sentence).empty()) throw HttpError(400, "'sentence' must not be empty");
    std::string model = string_field(body, "model");
    if (model.empty()) model = "rule_based";
    auto ex = extractor(model);
    if (!ex)
        throw HttpError(400, "unknown model '" + model + "'; available: " + join(model_names(), ", "),
                        {{"available", model_names()}});
    try {
        auto r = ex->extract(sentence);
        ojson out;
        out["model"] = model;
        out["events"] = events_to_json(r.events, true);
        out["raw"] = r.raw;
        out["warnings"] = r.warnings;
        return json_response(out);
    } catch (const RemoteError& e) {
        throw HttpError(502, e.what(), {{"retriable", e.retriable()}, {"raw", e.raw_body()}});
    }
}

Response ApiService::bulk_upload(const Request& req) const {
    std::vector<std::string> sentences;
    for (const auto& line : text::split_lines(req.body)) {
        auto s = text::trim(line);
        if (s.empty()) continue;
        if (sentences.size() == deps_.max_upload_lines)
            throw HttpError(413, "upload exceeds " + std::to_string(deps_.max_upload_lines) + " sentences");
        sentences.emplace_back(s);
    }
    if (sentences.empty()) throw HttpError(400, "upload contains no sentences");
    const std::size_t n = sentences.size();
    const std::string id = deps_.sessions->create(std::move(sentences));
    ojson body;
    body["session"] = id;
    body["sentences"] = n;
    body["ttl_seconds"] = deps_.sessions->ttl().count();
    return json_response(body, 201);
}

namespace {

struct ResolvedRun {
    RunSnapshot snap;
    std::string model;
};

}  // namespace

static ResolvedRun resolve_run(const ApiService& svc, Session& session, const std::string& model, bool wait,
                               const std::function<std::shared_ptr<const EventExtractor>(const std::string&)>& lookup) {
    if (model.empty()) throw HttpError(400, "'model' is required");
    if (auto s = session.stored(model)) return {std::move(*s), model};
    auto ex = lookup(model);
    if (!ex) {
        auto names = svc.model_names();
        for (const auto& m : session.models()) names.push_back(m);
        std::sort(names.begin(), names.end());
        names.erase(std::unique(names.begin(), names.end()), names.end());
        throw HttpError(400, "unknown model '" + model + "'; available: " + join(names, ", "), {{"available", names}});
    }
    return {session.run(ex, wait), model};
}

Response ApiService::bulk_results(const Request& req, const std::string& sid) const {
    auto session = deps_.sessions->get(sid);
    if (!session) throw HttpError(410, "session '" + sid + "' is unknown or expired");
    std::optional<Role> role;
    if (auto r = one(req, "filter_role"); r && !r->empty()) {
        role = role_from_name(*r);
        if (!role) throw HttpError(400, "unknown role '" + *r + "'");
    }
    const std::string span = text::lower(one(req, "filter_span").value_or(""));
    const Page page = page_from(req);
    auto lookup = [this](const std::string& m) { return extractor(m); };
    auto run = resolve_run(*this, *session, one(req, "model").value_or(""), flag_param(req, "wait"), lookup);

    ojson body;
    body["session"] = session->id();
    body["model"] = run.model;
    if (!run.snap.complete) {
        body["status"] = "running";
        body["pending"] = run.snap.pending;
        return json_response(body, 202);
    }
    body["status"] = "done";
    body["pending"] = 0.0;

    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < run.snap.rows.size(); ++i)
        if ((!role && span.empty()) || row_matches(run.snap.rows[i], role, span)) rows.push_back(i);
    const auto [b, e] = page_range(rows, page);
    put_page(body, rows.size(), page);
    ojson list = ojson::array();
    for (auto it = b; it != e; ++it) {
        const BulkRow& row = run.snap.rows[*it];
        ojson r;
        r["index"] = *it;
        r["sentence"] = session->sentences()[*it];
        r["events"] = events_to_json(row.events, true);
        r["raw"] = row.raw;
        if (row.error) r["error"] = *row.error;
        list.push_back(std::move(r));
    }
    body["rows"] = list;
    return json_response(body);
}

Response ApiService::bulk_compare(const Request& req, const std::string& sid) const {
    auto session = deps_.sessions->get(sid);
    if (!session) throw HttpError(410, "session '" + sid + "' is unknown or expired");
    const ojson in = parse_body(req);
    const Page page = page_from(req);
    auto lookup = [this](const std::string& m) { return extractor(m); };
    auto a = resolve_run(*this, *session, string_field(in, "model_a"), true, lookup);
    auto b = resolve_run(*this, *session, string_field(in, "model_b"), true, lookup);

    std::vector<eval::SentenceEventsList> ea, eb;
    for (const auto& r : a.snap.rows) ea.push_back(r.events);
    for (const auto& r : b.snap.rows) eb.push_back(r.events);
    const auto em = eval::em_f1(ea, eb);
    const auto tok = eval::token_f1(ea, eb);

    std::vector<std::size_t> idx(session->sentences().size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    const auto [pb, pe] = page_range(idx, page);

    ojson body;
    body["session"] = session->id();
    body["model_a"] = a.model;
    body["model_b"] = b.model;
    body["agreement"] = {{"em_f1", round2(em.overall.f1())}, {"token_f1", round2(tok.overall.f1())}};
    put_page(body, idx.size(), page);
    ojson rows = ojson::array();
    for (auto it = pb; it != pe; ++it) {
        const std::size_t i = *it;
        rows.push_back({{"index", i},
                        {"sentence", session->sentences()[i]},
                        {"a", events_to_json(a.snap.rows[i].events, true)},
                        {"b", events_to_json(b.snap.rows[i].events, true)}});
    }
    body["rows"] = rows;
    return json_response(body);
}

void ApiService::mount(httplib::Server& server) const {
    auto adapt = [this](const httplib::Request& in, httplib::Response& out) {
        Request req;
        req.method = in.method;
        req.path = in.path;
        for (const auto& [k, v] : in.params) req.params.emplace(k, v);
        req.body = in.body;
        Response r = handle(req);
        out.status = r.status;
        out.set_content(r.body, r.content_type);
    };
    server.Get(R"(/api/.*)", adapt);
    server.Post(R"(/api/.*)", adapt);
    server.Put(R"(/api/.*)", adapt);
    server.Delete(R"(/api/.*)", adapt);
}

}  // namespace drugwatch
