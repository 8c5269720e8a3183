#pragma once

#include "drugwatch/corpus.hpp"
#include "drugwatch/extractor.hpp"
#include "drugwatch/faers.hpp"
#include "drugwatch/index.hpp"
#include "drugwatch/session.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace httplib {
class Server;
}

namespace drugwatch {

/// Transport-independent request: query parameters may repeat.
struct Request {
    std::string method = "GET";
    std::string path;
    std::multimap<std::string, std::string> params;
    std::string body;
};

struct Response {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

/// Drug info cards keyed by lowercased name (and brand names).
class DrugInfoStore {
public:
    DrugInfoStore() = default;
    /// JSON array of cards; every card needs a string "name".
    static DrugInfoStore parse(const nlohmann::ordered_json& cards);
    static DrugInfoStore load(const std::string& path);

    [[nodiscard]] const nlohmann::ordered_json* find(std::string_view name) const;
    [[nodiscard]] std::size_t size() const noexcept { return cards_.size(); }

private:
    std::vector<nlohmann::ordered_json> cards_;
    std::map<std::string, std::size_t, std::less<>> by_name_;
};

struct ServiceDeps {
    std::shared_ptr<const Index> index;
    std::vector<CaseReport> articles;
    DrugInfoStore druginfo;
    std::vector<std::shared_ptr<const EventExtractor>> extractors;
    std::shared_ptr<const faers::Client> faers;  // null: FAERS requests report degraded
    std::shared_ptr<SessionStore> sessions;
    std::size_t max_upload_lines = 1000;
};

/// REST surface over the search index, drug-info store, extractors and session store.
/// `handle` is safe to call concurrently.
class ApiService {
public:
    explicit ApiService(ServiceDeps deps);

    [[nodiscard]] Response handle(const Request& req) const;

    /// Routes every /api request of `server` through `handle`.
    void mount(httplib::Server& server) const;

    [[nodiscard]] std::vector<std::string> model_names() const;

private:
    Response route(const Request& req) const;

    Response suggest(const Request& req) const;
    Response search(const Request& req) const;
    Response demographics(const Request& req) const;
    Response breakdown(const Request& req) const;
    Response crossbreakdown(const Request& req) const;
    Response articles(const Request& req) const;
    Response druginfo(const Request& req) const;
    Response annotate_live(const Request& req) const;
    Response bulk_upload(const Request& req) const;
    Response bulk_results(const Request& req, const std::string& sid) const;
    Response bulk_compare(const Request& req, const std::string& sid) const;

    [[nodiscard]] std::shared_ptr<const EventExtractor> extractor(const std::string& name) const;

    ServiceDeps deps_;
    std::map<std::string, std::size_t, std::less<>> article_by_pmid_;
    std::map<std::string, std::shared_ptr<const EventExtractor>, std::less<>> extractors_;
};

/// Highlight spans of `terms` in `text`: case-insensitive, word-bounded, sorted, and
/// non-overlapping (longer match wins at equal start).
struct Highlight {
    std::size_t start = 0;
    std::size_t end = 0;
    std::string term;
    bool operator==(const Highlight&) const = default;
};
[[nodiscard]] std::vector<Highlight> highlight_spans(std::string_view text, const std::vector<std::string>& terms);

}  // namespace drugwatch
