#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

namespace testsupport {

using namespace drugwatch;

AgeGroup oracle_age_group(const AgeValue& age) {
    if (age.kind == AgeValue::Kind::Unknown) return AgeGroup::Unknown;
    const double inf = std::numeric_limits<double>::infinity();
    const std::vector<std::tuple<AgeGroup, double, double>> table = {
        {AgeGroup::Neonate, 0.0, 28.0 / 365.0}, {AgeGroup::Infant, 28.0 / 365.0, 2.0},
        {AgeGroup::Child, 2.0, 12.0},           {AgeGroup::Adolescent, 12.0, 18.0},
        {AgeGroup::Adult, 18.0, 65.0},          {AgeGroup::Elderly, 65.0, inf}};
    for (const auto& [g, lo, hi] : table) {
        const bool lo_in = age.lo >= lo && age.lo < hi;
        const bool hi_in = age.hi < hi || (age.hi == hi && age.hi_open && age.kind == AgeValue::Kind::Range);
        if (lo_in && hi_in) return g;
    }
    return AgeGroup::Unknown;
}

namespace {

bool age_contains(const AgeValue& a, double v) {
    switch (a.kind) {
        case AgeValue::Kind::Unknown: return false;
        case AgeValue::Kind::Exact: return a.lo == v;
        case AgeValue::Kind::Range: return v >= a.lo && (a.hi_open ? v < a.hi : v <= a.hi);
    }
    return false;
}

bool intersects(const std::vector<std::string>& want, const std::set<std::string>& have) {
    for (const auto& w : want)
        if (have.contains(w)) return true;
    return false;
}

}  // namespace

std::vector<OracleArticle> oracle_match(const std::vector<NormalizedEventRecord>& records, const QuerySpec& q) {
    std::map<std::string, OracleArticle> by_pmid;
    for (const auto& r : records) {
        const std::set<std::string> drug{r.drug};
        const auto& own = q.kind == TermKind::Drug ? drug : r.effects;
        const auto& other = q.kind == TermKind::Drug ? r.effects : drug;
        if (!intersects(q.terms, own)) continue;
        if (!q.cofilter.empty() && !intersects(q.cofilter, other)) continue;
        if (q.age_exact && !age_contains(r.age, *q.age_exact)) continue;
        if (q.age_group && oracle_age_group(r.age) != *q.age_group) continue;
        if (q.gender && r.gender != *q.gender) continue;
        if (q.year_range && (!r.year || *r.year < q.year_range->first || *r.year > q.year_range->second)) continue;
        auto& a = by_pmid[r.pmid];
        a.pmid = r.pmid;
        a.year = r.year;
        a.group = oracle_age_group(r.age);
        a.gender = r.gender;
        a.terms.insert(other.begin(), other.end());
    }
    std::vector<OracleArticle> out;
    for (auto& [p, a] : by_pmid) out.push_back(std::move(a));
    return out;
}

std::vector<std::string> oracle_search(std::vector<OracleArticle> articles) {
    auto key = [](const OracleArticle& a) {
        return std::make_tuple(a.year ? 0 : 1, a.year ? -*a.year : 0, a.pmid);
    };
    std::sort(articles.begin(), articles.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
    std::vector<std::string> out;
    for (const auto& a : articles) out.push_back(a.pmid);
    return out;
}

std::map<int, std::size_t> oracle_yearly(const std::vector<OracleArticle>& articles) {
    std::map<int, std::size_t> out;
    for (const auto& a : articles)
        if (a.year) out[*a.year] += 1;
    return out;
}

std::vector<TermCount> oracle_rank(const std::vector<OracleArticle>& articles, std::size_t n) {
    std::map<std::string, std::size_t> counts;
    std::size_t total = 0;
    for (const auto& a : articles)
        for (const auto& t : a.terms) {
            ++counts[t];
            ++total;
        }
    std::vector<std::pair<std::string, std::size_t>> v(counts.begin(), counts.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    if (v.size() > n) v.resize(n);
    std::vector<TermCount> out;
    const std::size_t per_page = (v.size() + 4) / 5;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(TermCount{v[i].first, v[i].second, double(v[i].second) / double(total),
                                int(i / per_page) + 1});
    return out;
}

DemographicTally oracle_demo(const std::vector<OracleArticle>& articles) {
    DemographicTally out;
    for (const auto& a : articles) out[{a.group, a.gender}] += 1;
    return out;
}

std::vector<OracleArticle> oracle_select(const std::vector<OracleArticle>& articles, const GroupSelector& g) {
    std::vector<OracleArticle> out;
    for (const auto& a : articles) {
        const bool in = std::holds_alternative<AgeGroup>(g) ? a.group == std::get<AgeGroup>(g)
                                                             : a.gender == std::get<Gender>(g);
        if (in) out.push_back(a);
    }
    return out;
}

namespace {

using Instances = std::map<Role, std::vector<std::string>>;

Instances instances(const std::vector<PharmaEvent>& events) {
    Instances out;
    for (const auto& e : events)
        for (const auto& [r, spans] : e.args)
            for (const auto& s : spans) out[r].push_back(s.text);
    return out;
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) {
        std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
        out.push_back(t);
    }
    return out;
}

double overlap(const std::string& a, const std::string& b) {
    auto ta = tokens(a), tb = tokens(b);
    std::sort(ta.begin(), ta.end());
    std::sort(tb.begin(), tb.end());
    std::vector<std::string> common;
    std::set_intersection(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(common));
    return double(common.size());
}

template <typename PerRole>
std::map<Role, OracleTally> per_sentence_roles(const std::vector<std::vector<PharmaEvent>>& gold,
                                               const std::vector<std::vector<PharmaEvent>>& pred, PerRole&& f) {
    std::map<Role, OracleTally> out;
    for (std::size_t s = 0; s < gold.size(); ++s) {
        auto g = instances(gold[s]);
        auto p = instances(pred[s]);
        for (Role r : all_roles()) {
            const auto& gs = g[r];
            const auto& ps = p[r];
            if (gs.empty() && ps.empty()) continue;
            auto t = f(gs, ps);
            auto& o = out[r];
            o.tp += t.tp;
            o.fp += t.fp;
            o.fn += t.fn;
        }
    }
    return out;
}

}  // namespace

std::map<Role, OracleTally> oracle_em(const std::vector<std::vector<PharmaEvent>>& gold,
                                      const std::vector<std::vector<PharmaEvent>>& pred) {
    return per_sentence_roles(gold, pred, [](const auto& gs, const auto& ps) {
        std::map<std::string, int> cg, cp;
        for (const auto& s : gs) ++cg[s];
        for (const auto& s : ps) ++cp[s];
        double common = 0;
        for (const auto& [s, n] : cg) common += std::min(n, cp.count(s) ? cp[s] : 0);
        return OracleTally{common, double(ps.size()) - common, double(gs.size()) - common};
    });
}

std::map<Role, OracleTally> oracle_token(const std::vector<std::vector<PharmaEvent>>& gold,
                                         const std::vector<std::vector<PharmaEvent>>& pred) {
    return per_sentence_roles(gold, pred, [](const auto& gs, const auto& ps) {
        std::vector<bool> gu(gs.size()), pu(ps.size());
        OracleTally t;
        for (;;) {
            double best = 0;
            std::size_t bg = 0, bp = 0;
            bool found = false;
            for (std::size_t i = 0; i < gs.size(); ++i)
                for (std::size_t j = 0; j < ps.size(); ++j) {
                    if (gu[i] || pu[j]) continue;
                    const double ov = overlap(gs[i], ps[j]);
                    if (ov <= 0) continue;
                    const double len = double(tokens(gs[i]).size() + tokens(ps[j]).size());
                    const double blen = found ? double(tokens(gs[bg]).size() + tokens(ps[bp]).size()) : 0.0;
                    auto key = std::make_tuple(-ov, len, std::min(i, j), std::max(i, j), i);
                    auto bkey = std::make_tuple(-best, blen, std::min(bg, bp), std::max(bg, bp), bg);
                    if (!found || key < bkey) {
                        best = ov;
                        bg = i;
                        bp = j;
                        found = true;
                    }
                }
            if (!found) break;
            gu[bg] = pu[bp] = true;
            t.tp += best;
        }
        double gt = 0, pt = 0;
        for (const auto& s : gs) gt += double(tokens(s).size());
        for (const auto& s : ps) pt += double(tokens(s).size());
        t.fn = gt - t.tp;
        t.fp = pt - t.tp;
        return t;
    });
}

double optimal_token_overlap(const std::vector<std::vector<PharmaEvent>>& gold,
                             const std::vector<std::vector<PharmaEvent>>& pred) {
    double total = 0;
    for (std::size_t s = 0; s < gold.size(); ++s) {
        auto g = instances(gold[s]);
        auto p = instances(pred[s]);
        for (Role r : all_roles()) {
            const auto& gs = g[r];
            const auto& ps = p[r];
            std::vector<bool> used(ps.size());
            std::function<double(std::size_t)> best = [&](std::size_t i) -> double {
                if (i == gs.size()) return 0.0;
                double b = best(i + 1);
                for (std::size_t j = 0; j < ps.size(); ++j) {
                    if (used[j]) continue;
                    used[j] = true;
                    b = std::max(b, overlap(gs[i], ps[j]) + best(i + 1));
                    used[j] = false;
                }
                return b;
            };
            total += best(0);
        }
    }
    return total;
}

double f1_of(const OracleTally& t) {
    const double p = t.tp + t.fp > 0 ? t.tp / (t.tp + t.fp) : 0;
    const double r = t.tp + t.fn > 0 ? t.tp / (t.tp + t.fn) : 0;
    return p + r > 0 ? 100.0 * 2 * p * r / (p + r) : 0;
}

}  // namespace testsupport
