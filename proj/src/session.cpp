#include "drugwatch/session.hpp"

#include "drugwatch/error.hpp"
#include "drugwatch/model_json.hpp"
#include "drugwatch/text.hpp"

#include <openssl/rand.h>

#include <array>
#include <cstdio>

namespace drugwatch {

Session::Session(std::string id, std::vector<std::string> sentences, bool read_only)
    : id_(std::move(id)), sentences_(std::move(sentences)), read_only_(read_only) {}

Session::~Session() {
    for (auto& j : jobs_) j.request_stop();
}

std::vector<std::string> Session::models() const {
    std::lock_guard lock(mu_);
    std::vector<std::string> out;
    for (const auto& [name, run] : runs_) out.push_back(name);
    return out;
}

void Session::put(const std::string& model, std::vector<BulkRow> rows) {
    if (rows.size() != sentences_.size())
        throw Error("run '" + model + "' has " + std::to_string(rows.size()) + " rows for " +
                    std::to_string(sentences_.size()) + " sentences");
    auto run = std::make_shared<ModelRun>();
    run->rows = std::move(rows);
    run->done = run->rows.size();
    std::lock_guard lock(mu_);
    runs_[model] = std::move(run);
}

RunSnapshot Session::snapshot(const ModelRun& run) const {
    RunSnapshot s;
    const std::size_t n = sentences_.size();
    s.complete = run.done == n;
    s.pending = n == 0 ? 0.0 : static_cast<double>(n - run.done) / static_cast<double>(n);
    if (s.complete) s.rows = run.rows;
    return s;
}

std::optional<RunSnapshot> Session::stored(const std::string& model) const {
    std::lock_guard lock(mu_);
    auto it = runs_.find(model);
    if (it == runs_.end() || it->second->done != sentences_.size()) return std::nullopt;
    return snapshot(*it->second);
}

namespace {

BulkRow annotate(const EventExtractor& extractor, const std::string& sentence) {
    BulkRow row;
    try {
        auto r = extractor.extract(sentence);
        row.events = std::move(r.events);
        row.raw = std::move(r.raw);
    } catch (const RemoteError& e) {
        row.error = e.what();
        row.raw = e.raw_body();
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

}  // namespace

RunSnapshot Session::run(std::shared_ptr<const EventExtractor> extractor, bool wait) {
    const std::string model = extractor->name();
    std::unique_lock lock(mu_);
    auto it = runs_.find(model);
    if (it == runs_.end()) {
        if (read_only_) {
            lock.unlock();
            ModelRun local;
            for (const auto& s : sentences_) local.rows.push_back(annotate(*extractor, s));
            local.done = local.rows.size();
            return snapshot(local);
        }
        auto run = std::make_shared<ModelRun>();
        run->rows.resize(sentences_.size());
        it = runs_.emplace(model, run).first;
        jobs_.emplace_back([this, run, extractor](std::stop_token stop) {
            for (std::size_t i = 0; i < sentences_.size() && !stop.stop_requested(); ++i) {
                BulkRow row = annotate(*extractor, sentences_[i]);
                std::lock_guard guard(mu_);
                run->rows[i] = std::move(row);
                ++run->done;
            }
            cv_.notify_all();
        });
    }
    auto run = it->second;
    if (wait) cv_.wait(lock, [&] { return run->done == sentences_.size(); });
    return snapshot(*run);
}

SessionStore::SessionStore(std::chrono::seconds ttl, SteadyClock clock)
    : ttl_(ttl), clock_(clock ? std::move(clock) : [] { return std::chrono::steady_clock::now(); }) {
    if (ttl_.count() <= 0) throw Error("session TTL must be positive");
}

void SessionStore::purge(std::chrono::steady_clock::time_point now) {
    std::erase_if(sessions_, [&](const auto& kv) { return now - kv.second.last_access >= ttl_; });
}

std::string SessionStore::create(std::vector<std::string> sentences) {
    const auto now = clock_();
    std::lock_guard lock(mu_);
    purge(now);
    std::string id;
    do {
        id = new_session_id();
    } while (sessions_.contains(id));
    sessions_[id] = Entry{std::make_shared<Session>(id, std::move(sentences)), now};
    return id;
}

std::shared_ptr<Session> SessionStore::get(const std::string& id) {
    std::lock_guard lock(mu_);
    if (id == kPreloadedId) return preloaded_;
    const auto now = clock_();
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return nullptr;
    if (now - it->second.last_access >= ttl_) {
        sessions_.erase(it);
        return nullptr;
    }
    it->second.last_access = now;
    return it->second.session;
}

void SessionStore::set_preloaded(std::shared_ptr<Session> session) {
    std::lock_guard lock(mu_);
    preloaded_ = std::move(session);
}

std::size_t SessionStore::size() const {
    std::lock_guard lock(mu_);
    return sessions_.size();
}

std::string new_session_id() {
    std::array<unsigned char, 16> bytes{};
    if (RAND_bytes(bytes.data(), static_cast<int>(bytes.size())) != 1) throw Error("RAND_bytes failed");
    std::string out;
    char buf[3];
    for (auto b : bytes) {
        std::snprintf(buf, sizeof buf, "%02x", b);
        out += buf;
    }
    return out;
}

std::shared_ptr<Session> load_preloaded(const std::string& path) {
    std::vector<std::string> sentences;
    std::map<std::string, std::vector<BulkRow>> runs;
    std::vector<std::string> names;
    std::size_t lineno = 0;
    for (const auto& line : text::split_lines(text::read_file(path))) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        const auto where = path + ":" + std::to_string(lineno) + ": ";
        try {
            auto doc = nlohmann::json::parse(line);
            if (!doc.is_object() || !doc.contains("sentence") || !doc["sentence"].is_string())
                throw SchemaError("expected an object with a string 'sentence'");
            auto ann = doc.value("annotations", nlohmann::json::object());
            if (!ann.is_object()) throw SchemaError("'annotations' must be an object");
            std::vector<std::string> here;
            for (const auto& [model, events] : ann.items()) {
                here.push_back(model);
                BulkRow row;
                row.events = parse_model_json(events).events;
                row.raw = events.dump();
                runs[model].push_back(std::move(row));
            }
            if (sentences.empty()) names = here;
            else if (here != names) throw SchemaError("annotation models differ from the first line");
            sentences.push_back(doc["sentence"].get<std::string>());
        } catch (const std::exception& e) {
            throw Error(where + e.what());
        }
    }
    auto session = std::make_shared<Session>(SessionStore::kPreloadedId, std::move(sentences), true);
    for (auto& [model, rows] : runs) session->put(model, std::move(rows));
    return session;
}

}  // namespace drugwatch
