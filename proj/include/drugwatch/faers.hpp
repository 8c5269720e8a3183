#pragma once

#include "drugwatch/http_transport.hpp"
#include "drugwatch/index.hpp"
#include "drugwatch/normalize.hpp"

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace drugwatch::faers {

enum class SearchKind { GenericName, BrandName, Reaction };
enum class CountField { Reaction, GenericName, BrandName, ReceiveDate, PatientSex, OnsetAge };

/// OpenFDA patient.patientonsetageunit codes.
enum class AgeUnit : int { Decade = 800, Year = 801, Month = 802, Week = 803, Day = 804, Hour = 805 };

[[nodiscard]] double to_years(double value, AgeUnit unit) noexcept;

struct OnsetAgeFilter {
    double lo = 0;
    double hi = 0;
    AgeUnit unit = AgeUnit::Year;
};

struct FaersQuery {
    SearchKind kind = SearchKind::GenericName;
    std::string term;
    std::optional<Gender> sex;
    std::optional<OnsetAgeFilter> onset_age;
    std::optional<std::string> country;                         // ISO country code
    std::optional<std::pair<std::string, std::string>> received;  // YYYYMMDD, inclusive
    CountField count_field = CountField::Reaction;
    int limit = 50;
};

struct CountEntry {
    std::string key;  // term, or time bucket for receivedate counts
    long long count = 0;
    bool operator==(const CountEntry&) const = default;
};

struct FaersCountResult {
    std::vector<CountEntry> entries;
    long long total = 0;  // meta.results.total when present, else the entry sum
    std::string disclaimer;
    bool operator==(const FaersCountResult&) const = default;
};

/// Rate limit still hit after the last retry.
class QuotaError : public Error {
public:
    using Error::Error;
};

inline constexpr const char* kDefaultBase = "https://api.fda.gov";
inline constexpr const char* kApiKeyEnv = "OPENFDA_API_KEY";

/// Byte-exact request URL. Throws Error on an empty term, a limit outside [1, 1000], an
/// inverted or negative age range, a malformed date range, or a count field equal to the
/// search field.
[[nodiscard]] std::string build_count_request(const FaersQuery& q, const std::string& base = kDefaultBase);

/// Throws SchemaError when `results` is missing or an entry is malformed.
[[nodiscard]] FaersCountResult parse_count_response(std::string_view body);

[[nodiscard]] std::string sha1_hex(std::string_view data);

enum class Mode { Live, Fixture };

struct ClientConfig {
    Mode mode = Mode::Fixture;
    std::string base = kDefaultBase;
    std::string fixture_dir;            // <sha1(url)>.json recordings
    std::optional<std::string> api_key;  // live mode only; never part of the fixture key
    int max_attempts = 3;
    std::chrono::milliseconds initial_backoff{1000};
    std::chrono::milliseconds timeout{30000};
};

/// Client handle; immutable after construction and safe to share.
class Client {
public:
    using Sleeper = std::function<void(std::chrono::milliseconds)>;

    /// `transport` defaults to HttplibTransport; `sleep` defaults to std::this_thread::sleep_for.
    explicit Client(ClientConfig config, std::shared_ptr<HttpTransport> transport = nullptr, Sleeper sleep = nullptr);

    /// Fixture mode replays `<fixture_dir>/<sha1(url)>.json` and never touches the transport.
    /// Live mode performs GET with exponential backoff on 429. HTTP 404 means no matching
    /// reports and yields an empty result.
    [[nodiscard]] FaersCountResult fetch_counts(const FaersQuery& q) const;

    [[nodiscard]] const ClientConfig& config() const noexcept { return config_; }

private:
    ClientConfig config_;
    std::shared_ptr<HttpTransport> transport_;
    Sleeper sleep_;
};

/// Onset-age filter covering one shared age group (neonate/infant in days, the rest in years).
[[nodiscard]] OnsetAgeFilter onset_filter_for(AgeGroup g);

/// Bucket an OpenFDA onset age onto the shared age axis.
[[nodiscard]] AgeGroup age_group_for(double value, AgeUnit unit);

}  // namespace drugwatch::faers
