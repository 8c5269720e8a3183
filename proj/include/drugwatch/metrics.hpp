#pragma once

#include "drugwatch/event.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace drugwatch::eval {

/// Micro-averaged tallies; scores are percentages.
struct Tally {
    double tp = 0;
    double fp = 0;
    double fn = 0;

    Tally& operator+=(const Tally& o) {
        tp += o.tp;
        fp += o.fp;
        fn += o.fn;
        return *this;
    }
    bool operator==(const Tally&) const = default;

    [[nodiscard]] double precision() const noexcept;
    [[nodiscard]] double recall() const noexcept;
    [[nodiscard]] double f1() const noexcept;
};

struct ClassificationScores {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    double accuracy = 0;
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    bool no_predicted_positives = false;  // precision forced to 0
    bool no_gold_positives = false;       // recall forced to 0
};

/// Positive class = ADE. Throws Error on unequal or empty inputs.
[[nodiscard]] ClassificationScores classification_metrics(const std::vector<bool>& gold, const std::vector<bool>& pred);

/// Events of one sentence.
using SentenceEventsList = std::vector<PharmaEvent>;

struct ArgumentScores {
    Tally overall;
    Tally main;  // subject, treatment, effect
    Tally sub;   // all sub-roles
    std::map<Role, Tally> per_role;
};

/// Exact (role, span text) matching within each sentence, greedy in gold order.
/// Throws Error when the sentence counts differ.
[[nodiscard]] ArgumentScores em_f1(const std::vector<SentenceEventsList>& gold,
                                   const std::vector<SentenceEventsList>& pred);

/// Whitespace-token overlap. Within each sentence and role, gold/pred spans are paired
/// greedily by descending overlap; ties go to the pair with fewer tokens in total, then to
/// lower min(gold index, pred index), then lower max, which keeps the pairing symmetric in
/// gold and pred. Only pairs with positive overlap are formed. Paired overlap counts as TP,
/// the remaining tokens as FP (pred) or FN (gold).
[[nodiscard]] ArgumentScores token_f1(const std::vector<SentenceEventsList>& gold,
                                      const std::vector<SentenceEventsList>& pred);

struct EvalReport {
    ClassificationScores classification;
    bool has_classification = false;
    ArgumentScores em;
    ArgumentScores token;
};

/// Flat object; scores rounded to two decimals, tallies kept as integers.
[[nodiscard]] nlohmann::ordered_json to_json(const EvalReport& r, bool per_role);
/// Aligned text table.
[[nodiscard]] std::string to_table(const EvalReport& r, bool per_role);

/// Line-delimited sentence files: each line is an event array or an object with "events".
[[nodiscard]] std::vector<SentenceEventsList> load_sentence_events(const std::string& path);

struct Split {
    std::vector<std::size_t> train, valid, test;  // indices into the input
};

/// Seeded Fisher-Yates shuffle (mt19937_64, unbiased bounded draws), then contiguous cuts:
/// valid = floor(n*rv), test = floor(n*rt), train takes the rest. Throws Error on empty input
/// or ratios not summing to 1 within 1e-9.
[[nodiscard]] Split split_dataset(std::size_t n, double train_ratio, double valid_ratio, double test_ratio,
                                  std::uint64_t seed);

template <typename T>
struct SplitItems {
    std::vector<T> train, valid, test;
};

template <typename T>
[[nodiscard]] SplitItems<T> split_dataset(const std::vector<T>& items, double train_ratio, double valid_ratio,
                                          double test_ratio, std::uint64_t seed) {
    const Split s = split_dataset(items.size(), train_ratio, valid_ratio, test_ratio, seed);
    SplitItems<T> out;
    for (auto i : s.train) out.train.push_back(items[i]);
    for (auto i : s.valid) out.valid.push_back(items[i]);
    for (auto i : s.test) out.test.push_back(items[i]);
    return out;
}

}  // namespace drugwatch::eval
