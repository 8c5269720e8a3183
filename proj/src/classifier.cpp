#include "drugwatch/classifier.hpp"

#include "drugwatch/error.hpp"
#include "drugwatch/text.hpp"

#include <cmath>
#include <set>

namespace drugwatch {

BaselineClassifier BaselineClassifier::train(const std::vector<std::pair<std::string, bool>>& labeled,
                                             double threshold) {
    std::map<std::string, std::size_t> pos_counts, neg_counts;
    std::set<std::string> vocab;
    std::size_t pos_docs = 0, neg_docs = 0, pos_tokens = 0, neg_tokens = 0;

    for (const auto& [sentence, is_ade] : labeled) {
        auto& counts = is_ade ? pos_counts : neg_counts;
        auto& total = is_ade ? pos_tokens : neg_tokens;
        (is_ade ? pos_docs : neg_docs)++;
        for (auto& tok : text::alnum_tokens(sentence)) {
            vocab.insert(tok);
            ++counts[tok];
            ++total;
        }
    }
    if (pos_docs == 0) throw Error("training data has no examples of the positive (ADE) class");
    if (neg_docs == 0) throw Error("training data has no examples of the negative (non-ADE) class");

    const double vocab_size = static_cast<double>(vocab.size()) + 1.0;  // + unknown bucket
    const double docs = static_cast<double>(pos_docs + neg_docs);

    auto fill = [&](ClassParams& p, const std::map<std::string, std::size_t>& counts,
                    std::size_t ndocs, std::size_t ntokens) {
        const double denom = static_cast<double>(ntokens) + vocab_size;
        p.log_prior = std::log(static_cast<double>(ndocs) / docs);
        p.log_unknown = std::log(1.0 / denom);
        for (const auto& tok : vocab) {
            auto it = counts.find(tok);
            const double c = it == counts.end() ? 0.0 : static_cast<double>(it->second);
            p.token_log_likelihood.emplace(tok, std::log((c + 1.0) / denom));
        }
    };

    BaselineClassifier clf;
    fill(clf.pos_, pos_counts, pos_docs, pos_tokens);
    fill(clf.neg_, neg_counts, neg_docs, neg_tokens);
    clf.threshold_ = threshold;
    return clf;
}

std::vector<std::pair<std::string, bool>> BaselineClassifier::load_labeled(const std::string& path) {
    std::vector<std::pair<std::string, bool>> out;
    std::size_t lineno = 0;
    for (const auto& raw : text::split_lines(text::read_file(path))) {
        ++lineno;
        auto line = text::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw Error(path + ":" + std::to_string(lineno) + ": expected label<TAB>sentence");
        const std::string label = text::lower(text::trim(line.substr(0, tab)));
        bool is_ade;
        if (label == "1" || label == "ade") is_ade = true;
        else if (label == "0" || label == "neg") is_ade = false;
        else throw Error(path + ":" + std::to_string(lineno) + ": unknown label '" + label + "'");
        out.emplace_back(std::string(text::trim(line.substr(tab + 1))), is_ade);
    }
    return out;
}

AdeLabel BaselineClassifier::classify(std::string_view sentence) const {
    double lp = pos_.log_prior;
    double ln = neg_.log_prior;
    for (const auto& tok : text::alnum_tokens(sentence)) {
        auto ip = pos_.token_log_likelihood.find(tok);
        if (ip == pos_.token_log_likelihood.end()) continue;
        lp += ip->second;
        ln += neg_.token_log_likelihood.at(tok);
    }
    // P(pos) = 1 / (1 + exp(ln - lp))
    const double score = 1.0 / (1.0 + std::exp(ln - lp));
    return AdeLabel{score >= threshold_, score};
}

}  // namespace drugwatch
