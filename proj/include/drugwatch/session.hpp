#pragma once

#include "drugwatch/extractor.hpp"

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace drugwatch {

/// Annotation of one uploaded sentence by one model.
struct BulkRow {
    std::vector<PharmaEvent> events;
    std::string raw;
    std::optional<std::string> error;  // extractor failure for this sentence
};

struct RunSnapshot {
    bool complete = false;
    double pending = 1.0;       // fraction of sentences not yet annotated
    std::vector<BulkRow> rows;  // filled only when complete
};

/// Volatile per-user state: uploaded sentences and per-model annotation runs.
class Session {
public:
    Session(std::string id, std::vector<std::string> sentences, bool read_only = false);
    ~Session();

    Session(const Session&) = delete;
    Session& operator=(const Session&) = delete;

    [[nodiscard]] const std::string& id() const noexcept { return id_; }
    [[nodiscard]] const std::vector<std::string>& sentences() const noexcept { return sentences_; }
    [[nodiscard]] bool read_only() const noexcept { return read_only_; }

    /// Models with a cached or running annotation run.
    [[nodiscard]] std::vector<std::string> models() const;

    /// Stores a finished run; used to seed read-only datasets.
    void put(const std::string& model, std::vector<BulkRow> rows);

    /// Returns the run of `extractor`, starting it in the background if needed. With `wait` the
    /// call blocks until the run is complete. Read-only sessions compute uncached runs inline
    /// and never store them.
    [[nodiscard]] RunSnapshot run(std::shared_ptr<const EventExtractor> extractor, bool wait);

    /// Stored run by name, when complete.
    [[nodiscard]] std::optional<RunSnapshot> stored(const std::string& model) const;

private:
    struct ModelRun {
        std::vector<BulkRow> rows;
        std::size_t done = 0;
    };

    [[nodiscard]] RunSnapshot snapshot(const ModelRun& run) const;

    std::string id_;
    std::vector<std::string> sentences_;
    bool read_only_;
    mutable std::mutex mu_;
    std::condition_variable cv_;
    std::map<std::string, std::shared_ptr<ModelRun>> runs_;
    std::vector<std::jthread> jobs_;  // last member: joined before the state above goes away
};

using SteadyClock = std::function<std::chrono::steady_clock::time_point()>;

/// Sessions keyed by 128-bit random ids. A session expires `ttl` after its last access and is
/// unreachable from then on. The reserved id `preloaded` never expires.
class SessionStore {
public:
    static constexpr const char* kPreloadedId = "preloaded";

    explicit SessionStore(std::chrono::seconds ttl = std::chrono::minutes(30), SteadyClock clock = nullptr);

    /// New session over `sentences`; returns its id.
    std::string create(std::vector<std::string> sentences);

    /// nullptr for unknown or expired ids.
    [[nodiscard]] std::shared_ptr<Session> get(const std::string& id);

    /// Installs the read-only dataset under `preloaded`.
    void set_preloaded(std::shared_ptr<Session> session);

    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] std::chrono::seconds ttl() const noexcept { return ttl_; }

private:
    struct Entry {
        std::shared_ptr<Session> session;
        std::chrono::steady_clock::time_point last_access;
    };

    void purge(std::chrono::steady_clock::time_point now);

    std::chrono::seconds ttl_;
    SteadyClock clock_;
    mutable std::mutex mu_;
    std::map<std::string, Entry> sessions_;
    std::shared_ptr<Session> preloaded_;
};

/// 32 hex characters from the OpenSSL CSPRNG.
[[nodiscard]] std::string new_session_id();

/// PHEE-style dataset, one JSON object per line:
///   {"sentence": "...", "annotations": {"<model>": [events...], ...}}
/// Every line must carry the same model names. Throws Error naming the line on bad input.
[[nodiscard]] std::shared_ptr<Session> load_preloaded(const std::string& path);

}  // namespace drugwatch
