#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace drugwatch {

struct AdeLabel {
    bool is_ade = false;
    double score = 0.0;  // posterior probability of the ADE class
};

/// Sentence-level ADE relevance classifier. Implementations are immutable after
/// construction and safe to share across threads.
class SentenceClassifier {
public:
    virtual ~SentenceClassifier() = default;
    [[nodiscard]] virtual AdeLabel classify(std::string_view sentence) const = 0;
};

/// Multinomial naive Bayes over lowercased alphanumeric unigrams with add-one smoothing.
///
/// The vocabulary is every training token plus one unknown-token bucket, so each class's
/// likelihoods sum to one. Tokens never seen in training carry no evidence at
/// classification time: a sentence made only of unknown tokens scores from the priors.
class BaselineClassifier final : public SentenceClassifier {
public:
    struct ClassParams {
        double log_prior = 0.0;
        double log_unknown = 0.0;
        std::map<std::string, double> token_log_likelihood;
        bool operator==(const ClassParams&) const = default;
    };

    /// Throws drugwatch::Error when either class has no examples.
    static BaselineClassifier train(const std::vector<std::pair<std::string, bool>>& labeled,
                                    double threshold = 0.5);

    /// Reads `label<TAB>sentence` lines where label is 1/0 (or ADE/NEG); `#` starts a comment.
    static std::vector<std::pair<std::string, bool>> load_labeled(const std::string& path);

    [[nodiscard]] AdeLabel classify(std::string_view sentence) const override;

    [[nodiscard]] double threshold() const noexcept { return threshold_; }
    void set_threshold(double t) noexcept { threshold_ = t; }
    [[nodiscard]] const ClassParams& positive() const noexcept { return pos_; }
    [[nodiscard]] const ClassParams& negative() const noexcept { return neg_; }

    bool operator==(const BaselineClassifier& o) const {
        return pos_ == o.pos_ && neg_ == o.neg_ && threshold_ == o.threshold_;
    }

private:
    ClassParams pos_;
    ClassParams neg_;
    double threshold_ = 0.5;
};

}  // namespace drugwatch
