#include "drugwatch/metrics.hpp"

#include "drugwatch/error.hpp"
#include "drugwatch/model_json.hpp"
#include "drugwatch/text.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <tuple>

namespace drugwatch::eval {

double Tally::precision() const noexcept { return tp + fp > 0 ? 100.0 * tp / (tp + fp) : 0.0; }
double Tally::recall() const noexcept { return tp + fn > 0 ? 100.0 * tp / (tp + fn) : 0.0; }
double Tally::f1() const noexcept {
    const double p = precision(), r = recall();
    return p + r > 0 ? 2.0 * p * r / (p + r) : 0.0;
}

ClassificationScores classification_metrics(const std::vector<bool>& gold, const std::vector<bool>& pred) {
    if (gold.size() != pred.size()) throw Error("gold and predicted label counts differ");
    if (gold.empty()) throw Error("no labels to score");
    ClassificationScores s;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        if (gold[i] && pred[i]) ++s.tp;
        else if (!gold[i] && pred[i]) ++s.fp;
        else if (gold[i] && !pred[i]) ++s.fn;
        else ++s.tn;
    }
    const double tp = static_cast<double>(s.tp);
    s.no_predicted_positives = s.tp + s.fp == 0;
    s.no_gold_positives = s.tp + s.fn == 0;
    s.precision = s.no_predicted_positives ? 0.0 : 100.0 * tp / static_cast<double>(s.tp + s.fp);
    s.recall = s.no_gold_positives ? 0.0 : 100.0 * tp / static_cast<double>(s.tp + s.fn);
    s.f1 = s.precision + s.recall > 0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
    s.accuracy = 100.0 * static_cast<double>(s.tp + s.tn) / static_cast<double>(gold.size());
    return s;
}

namespace {

/// role -> span texts in event order, for one sentence.
std::map<Role, std::vector<std::string>> by_role(const SentenceEventsList& events) {
    std::map<Role, std::vector<std::string>> out;
    for (const auto& e : events)
        for (const auto& [role, spans] : e.args)
            for (const auto& s : spans) out[role].push_back(s.text);
    return out;
}

void add(ArgumentScores& scores, Role role, const Tally& t) {
    scores.per_role[role] += t;
    (is_main_role(role) ? scores.main : scores.sub) += t;
    scores.overall += t;
}

template <typename RoleScorer>
ArgumentScores score(const std::vector<SentenceEventsList>& gold, const std::vector<SentenceEventsList>& pred,
                     RoleScorer&& scorer) {
    if (gold.size() != pred.size())
        throw Error("gold has " + std::to_string(gold.size()) + " sentences, prediction has " +
                    std::to_string(pred.size()));
    ArgumentScores scores;
    for (std::size_t s = 0; s < gold.size(); ++s) {
        const auto g = by_role(gold[s]);
        const auto p = by_role(pred[s]);
        for (Role role : all_roles()) {
            static const std::vector<std::string> kNone;
            auto gi = g.find(role);
            auto pi = p.find(role);
            const auto& gs = gi == g.end() ? kNone : gi->second;
            const auto& ps = pi == p.end() ? kNone : pi->second;
            if (gs.empty() && ps.empty()) continue;
            add(scores, role, scorer(gs, ps));
        }
    }
    return scores;
}

Tally exact_match(const std::vector<std::string>& gold, const std::vector<std::string>& pred) {
    std::vector<bool> used(gold.size(), false);
    Tally t;
    for (const auto& p : pred) {
        bool hit = false;
        for (std::size_t i = 0; i < gold.size(); ++i) {
            if (!used[i] && gold[i] == p) {
                used[i] = true;
                hit = true;
                break;
            }
        }
        (hit ? t.tp : t.fp) += 1;
    }
    t.fn = static_cast<double>(std::count(used.begin(), used.end(), false));
    return t;
}

std::size_t token_overlap(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::map<std::string, std::size_t> counts;
    for (const auto& t : a) ++counts[t];
    std::size_t n = 0;
    for (const auto& t : b) {
        auto it = counts.find(t);
        if (it != counts.end() && it->second > 0) {
            --it->second;
            ++n;
        }
    }
    return n;
}

Tally token_match(const std::vector<std::string>& gold, const std::vector<std::string>& pred) {
    std::vector<std::vector<std::string>> gt, pt;
    for (const auto& g : gold) gt.push_back(text::whitespace_tokens(g));
    for (const auto& p : pred) pt.push_back(text::whitespace_tokens(p));

    struct Pair {
        std::size_t overlap, length, g, p;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < gt.size(); ++i)
        for (std::size_t j = 0; j < pt.size(); ++j)
            if (auto ov = token_overlap(gt[i], pt[j]); ov > 0) pairs.push_back({ov, gt[i].size() + pt[j].size(), i, j});
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        return std::make_tuple(b.overlap, a.length, std::min(a.g, a.p), std::max(a.g, a.p), a.g) <
               std::make_tuple(a.overlap, b.length, std::min(b.g, b.p), std::max(b.g, b.p), b.g);
    });

    std::vector<bool> gused(gt.size(), false), pused(pt.size(), false);
    Tally t;
    for (const auto& pr : pairs) {
        if (gused[pr.g] || pused[pr.p]) continue;
        gused[pr.g] = pused[pr.p] = true;
        t.tp += static_cast<double>(pr.overlap);
        t.fp += static_cast<double>(pt[pr.p].size() - pr.overlap);
        t.fn += static_cast<double>(gt[pr.g].size() - pr.overlap);
    }
    for (std::size_t i = 0; i < gt.size(); ++i)
        if (!gused[i]) t.fn += static_cast<double>(gt[i].size());
    for (std::size_t j = 0; j < pt.size(); ++j)
        if (!pused[j]) t.fp += static_cast<double>(pt[j].size());
    return t;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

void put_tally(nlohmann::ordered_json& j, const std::string& prefix, const Tally& t) {
    j[prefix + "_p"] = round2(t.precision());
    j[prefix + "_r"] = round2(t.recall());
    j[prefix + "_f1"] = round2(t.f1());
    j[prefix + "_tp"] = static_cast<long long>(t.tp);
    j[prefix + "_fp"] = static_cast<long long>(t.fp);
    j[prefix + "_fn"] = static_cast<long long>(t.fn);
}

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

}  // namespace

ArgumentScores em_f1(const std::vector<SentenceEventsList>& gold, const std::vector<SentenceEventsList>& pred) {
    return score(gold, pred, exact_match);
}

ArgumentScores token_f1(const std::vector<SentenceEventsList>& gold, const std::vector<SentenceEventsList>& pred) {
    return score(gold, pred, token_match);
}

nlohmann::ordered_json to_json(const EvalReport& r, bool per_role) {
    nlohmann::ordered_json j;
    if (r.has_classification) {
        const auto& c = r.classification;
        j["cls_p"] = round2(c.precision);
        j["cls_r"] = round2(c.recall);
        j["cls_f1"] = round2(c.f1);
        j["cls_accuracy"] = round2(c.accuracy);
        j["cls_tp"] = c.tp;
        j["cls_fp"] = c.fp;
        j["cls_fn"] = c.fn;
        j["cls_tn"] = c.tn;
    }
    for (const auto& [scope, em, tok] : {std::tuple{"main", &r.em.main, &r.token.main},
                                         std::tuple{"sub", &r.em.sub, &r.token.sub},
                                         std::tuple{"overall", &r.em.overall, &r.token.overall}}) {
        put_tally(j, std::string(scope) + "_em", *em);
        put_tally(j, std::string(scope) + "_token", *tok);
    }
    if (per_role) {
        for (Role role : all_roles()) {
            auto e = r.em.per_role.find(role);
            auto t = r.token.per_role.find(role);
            if (e == r.em.per_role.end() && t == r.token.per_role.end()) continue;
            const std::string name(role_name(role));
            put_tally(j, name + "_em", e == r.em.per_role.end() ? Tally{} : e->second);
            put_tally(j, name + "_token", t == r.token.per_role.end() ? Tally{} : t->second);
        }
    }
    return j;
}

std::string to_table(const EvalReport& r, bool per_role) {
    std::ostringstream out;
    char line[160];
    if (r.has_classification) {
        const auto& c = r.classification;
        std::snprintf(line, sizeof line, "%-24s %8s %8s %8s %8s\n", "classification", "P", "R", "F1", "Acc");
        out << line;
        std::snprintf(line, sizeof line, "%-24s %8.2f %8.2f %8.2f %8.2f\n", "", c.precision, c.recall, c.f1,
                      c.accuracy);
        out << line << '\n';
    }
    std::snprintf(line, sizeof line, "%-24s %8s %8s %8s %8s %8s %8s\n", "arguments", "EM_P", "EM_R", "EM_F1",
                  "Tok_P", "Tok_R", "Tok_F1");
    out << line;
    auto row = [&](const std::string& name, const Tally& em, const Tally& tok) {
        std::snprintf(line, sizeof line, "%-24s %8.2f %8.2f %8.2f %8.2f %8.2f %8.2f\n", name.c_str(), em.precision(),
                      em.recall(), em.f1(), tok.precision(), tok.recall(), tok.f1());
        out << line;
    };
    row("main", r.em.main, r.token.main);
    row("sub", r.em.sub, r.token.sub);
    row("overall", r.em.overall, r.token.overall);
    if (per_role) {
        for (Role role : all_roles()) {
            auto e = r.em.per_role.find(role);
            auto t = r.token.per_role.find(role);
            if (e == r.em.per_role.end() && t == r.token.per_role.end()) continue;
            row("  " + std::string(role_name(role)), e == r.em.per_role.end() ? Tally{} : e->second,
                t == r.token.per_role.end() ? Tally{} : t->second);
        }
    }
    return out.str();
}

std::vector<SentenceEventsList> load_sentence_events(const std::string& path) {
    std::vector<SentenceEventsList> out;
    std::size_t lineno = 0;
    for (const auto& line : text::split_lines(text::read_file(path))) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        try {
            auto doc = nlohmann::json::parse(line);
            if (doc.is_object()) {
                auto ev = doc.find("events");
                if (ev == doc.end()) throw SchemaError("object line without 'events'");
                doc = *ev;
            }
            if (doc.is_array())
                for (const auto& e : doc)
                    if (auto args = e.find("arguments"); e.is_object() && args != e.end() && args->is_object())
                        for (const auto& [name, spans] : args->items())
                            if (!role_from_name(name)) throw SchemaError("unknown role '" + name + "'");
            out.push_back(parse_model_json(doc).events);
        } catch (const std::exception& e) {
            throw Error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

Split split_dataset(std::size_t n, double train_ratio, double valid_ratio, double test_ratio, std::uint64_t seed) {
    if (n == 0) throw Error("cannot split an empty dataset");
    if (train_ratio < 0 || valid_ratio < 0 || test_ratio < 0 ||
        std::abs(train_ratio + valid_ratio + test_ratio - 1.0) > 1e-9)
        throw Error("split ratios must be non-negative and sum to 1");

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::mt19937_64 rng(seed);
    for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[bounded(rng, i + 1)]);

    const auto dn = static_cast<double>(n);
    const auto n_valid = static_cast<std::size_t>(std::floor(dn * valid_ratio));
    const auto n_test = static_cast<std::size_t>(std::floor(dn * test_ratio));
    const std::size_t n_train = n - n_valid - n_test;

    Split s;
    s.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    s.valid.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train),
                   order.begin() + static_cast<std::ptrdiff_t>(n_train + n_valid));
    s.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train + n_valid), order.end());
    return s;
}

}  // namespace drugwatch::eval
