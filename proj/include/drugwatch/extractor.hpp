#pragma once

#include "drugwatch/event.hpp"
#include "drugwatch/http_transport.hpp"

#include <chrono>
#include <cstddef>
#include <memory>
#include <semaphore>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace drugwatch {

struct ExtractionResult {
    std::vector<PharmaEvent> events;
    std::string raw;  // adapter output as received (or as serialized, for local extractors)
    std::vector<std::string> warnings;
};

/// Sentence-level event extractor. Handles are immutable after construction and shareable.
class EventExtractor {
public:
    virtual ~EventExtractor() = default;
    [[nodiscard]] virtual ExtractionResult extract(std::string_view sentence) const = 0;
    [[nodiscard]] virtual std::string name() const = 0;
};

/// Lowercase term list, longest entries first for a given prefix.
class Lexicon {
public:
    Lexicon() = default;
    explicit Lexicon(const std::vector<std::string>& terms);

    /// One term per line, '#' comments; entries are lowercased on load.
    static Lexicon load(const std::string& path);

    /// Non-overlapping, case-insensitive, word-bounded longest matches, left to right.
    [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> scan(std::string_view sentence) const;

    [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }

private:
    std::set<std::string, std::less<>> terms_;
    std::size_t max_length_ = 0;
};

struct Lexicons {
    Lexicon drugs;
    Lexicon effects;
};

/// Lexicon + pattern baseline. Emits one ADE event per sentence when at least one drug and
/// one effect are found: every drug span becomes a treatment with a treatment.drug sub-role,
/// effects become effect spans, and the first age expression and gender keyword become
/// subject sub-roles under a subject span covering both. All spans carry offsets.
class RuleBasedExtractor final : public EventExtractor {
public:
    /// Throws Error when either lexicon is empty.
    explicit RuleBasedExtractor(Lexicons lexicons);

    [[nodiscard]] ExtractionResult extract(std::string_view sentence) const override;
    [[nodiscard]] std::string name() const override { return "rule_based"; }

private:
    Lexicons lexicons_;
};

/// Remote failure. `retriable` is set for transport errors, timeouts, 429 and 5xx.
class RemoteError : public Error {
public:
    RemoteError(const std::string& what, bool retriable, std::string raw_body = {})
        : Error(what), retriable_(retriable), raw_body_(std::move(raw_body)) {}
    [[nodiscard]] bool retriable() const noexcept { return retriable_; }
    [[nodiscard]] const std::string& raw_body() const noexcept { return raw_body_; }

private:
    bool retriable_;
    std::string raw_body_;
};

struct RemoteConfig {
    std::string endpoint;  // POST target
    std::string model;     // passed through in the request body
    std::chrono::milliseconds timeout{30000};
    std::size_t max_in_flight = 4;
};

/// Adapter for a model served elsewhere. Sends {"sentence", "model"}, repairs the returned
/// body and parses it with the model event schema.
class RemoteExtractor final : public EventExtractor {
public:
    /// Throws Error when the endpoint is empty.
    RemoteExtractor(RemoteConfig config, std::shared_ptr<HttpTransport> transport);

    [[nodiscard]] ExtractionResult extract(std::string_view sentence) const override;
    [[nodiscard]] std::string name() const override { return config_.model; }

private:
    RemoteConfig config_;
    std::shared_ptr<HttpTransport> transport_;
    std::shared_ptr<std::counting_semaphore<>> in_flight_;
};

}  // namespace drugwatch
