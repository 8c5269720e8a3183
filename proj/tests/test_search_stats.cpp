#include "drugwatch/error.hpp"
#include "drugwatch/index.hpp"
#include "drugwatch/stats.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace drugwatch;

namespace {

NormalizedEventRecord rec(std::string pmid, std::string drug, std::set<std::string> effects, AgeValue age,
                          Gender gender, std::optional<int> year) {
    NormalizedEventRecord r;
    r.pmid = std::move(pmid);
    r.drug = std::move(drug);
    r.effects = std::move(effects);
    r.age = age;
    r.gender = gender;
    r.year = year;
    return r;
}

// Six records over five articles; pmid 103 carries two drugs.
std::vector<NormalizedEventRecord> fixture() {
    return {
        rec("101", "aspirin", {"liver failure", "nausea"}, AgeValue::exact(6), Gender::Male, 2019),
        rec("102", "aspirin", {"liver failure", "nausea", "rash"}, AgeValue::range(30, 39), Gender::Female, 2019),
        rec("103", "aspirin", {"nausea", "rash"}, AgeValue::unknown(), Gender::Unknown, 2021),
        rec("103", "ibuprofen", {"nausea"}, AgeValue::unknown(), Gender::Unknown, 2021),
        rec("104", "ibuprofen", {"rash"}, AgeValue::range(2, 12, true), Gender::Female, 2020),
        rec("105", "acetaminophen", {"liver failure", "nausea", "rash"}, AgeValue::range(65, 150), Gender::Male,
            std::nullopt),
    };
}

const Index& fixture_index() {
    static const Index idx = Index::build(fixture(), SynonymDictionary::parse("tylenol\tacetaminophen\n"));
    return idx;
}

QuerySpec drug_q(std::vector<std::string> terms) {
    QuerySpec q;
    q.terms = std::move(terms);
    return q;
}

QuerySpec effect_q(std::vector<std::string> terms) {
    QuerySpec q;
    q.kind = TermKind::Effect;
    q.terms = std::move(terms);
    return q;
}

std::vector<std::pair<std::string, std::size_t>> counts(const std::vector<TermCount>& v) {
    std::vector<std::pair<std::string, std::size_t>> out;
    for (const auto& t : v) out.emplace_back(t.term, t.count);
    return out;
}

QuerySpec oracle_canonical(QuerySpec q) {
    auto clean = [](std::vector<std::string>& v, TermKind k) {
        std::vector<std::string> out;
        for (const auto& t : v) {
            const std::string c = clean_term(t);
            if (!c.empty()) out.push_back(normalize_term(c, k));
        }
        v = out;
    };
    clean(q.terms, q.kind);
    clean(q.cofilter, q.kind == TermKind::Drug ? TermKind::Effect : TermKind::Drug);
    return q;
}

}  // namespace

TEST_CASE("index build: postings, determinism, errors") {
    const Index& idx = fixture_index();
    CHECK(idx.records().size() == 6);
    CHECK(idx.postings(TermKind::Drug).at("aspirin").size() == 3);
    CHECK(idx.postings(TermKind::Effect).at("nausea").size() == 5);
    for (TermKind k : {TermKind::Drug, TermKind::Effect})
        for (const auto& [term, ids] : idx.postings(k)) {
            CHECK(std::is_sorted(ids.begin(), ids.end()));
            CHECK(std::adjacent_find(ids.begin(), ids.end()) == ids.end());
            for (RecordId id : ids) {
                const auto& r = idx.record(id);
                CHECK((k == TermKind::Drug ? r.drug == term : r.effects.count(term) == 1));
            }
        }
    CHECK(idx.year_histogram(TermKind::Drug, "aspirin") == std::map<int, std::size_t>{{2019, 2}, {2021, 1}});
    CHECK(idx.year_histogram(TermKind::Drug, "nothing").empty());

    auto shuffled = fixture();
    std::reverse(shuffled.begin(), shuffled.end());
    const Index again = Index::build(shuffled, SynonymDictionary::parse("tylenol\tacetaminophen\n"));
    CHECK(again.same_content(idx));
    CHECK(again.build_stamp() == idx.build_stamp());

    auto dup = fixture();
    dup.push_back(dup[0]);
    CHECK_THROWS_WITH_AS(Index::build(dup), doctest::Contains("101"), Error);

    const Index empty = Index::build({});
    CHECK(empty.records().empty());
    CHECK(search_articles(empty, drug_q({"aspirin"})).empty());
    CHECK(compute_stats(empty, drug_q({"aspirin"})).total == 0);
}

TEST_CASE("age groups") {
    CHECK(age_group_of(AgeValue::exact(6)) == AgeGroup::Child);
    CHECK(age_group_of(AgeValue::exact(0)) == AgeGroup::Neonate);
    CHECK(age_group_of(AgeValue::exact(kNeonateUpper)) == AgeGroup::Infant);
    CHECK(age_group_of(AgeValue::exact(2)) == AgeGroup::Child);
    CHECK(age_group_of(AgeValue::exact(65)) == AgeGroup::Elderly);
    CHECK(age_group_of(AgeValue::range(2, 12, true)) == AgeGroup::Child);
    CHECK(age_group_of(AgeValue::range(2, 12)) == AgeGroup::Unknown);
    CHECK(age_group_of(AgeValue::range(60, 69)) == AgeGroup::Unknown);
    CHECK(age_group_of(AgeValue::range(30, 39)) == AgeGroup::Adult);
    CHECK(age_group_of(AgeValue::range(65, 150)) == AgeGroup::Elderly);
    CHECK(age_group_of(AgeValue::unknown()) == AgeGroup::Unknown);
    for (AgeGroup g : age_groups()) CHECK(parse_age_group(to_string(g)) == g);
    CHECK(parse_age_group("unknown") == AgeGroup::Unknown);
    CHECK_FALSE(parse_age_group("toddler"));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        const double y = std::uniform_real_distribution<double>(0.0, 120.0)(rng);
        int hits = 0;
        for (AgeGroup g : age_groups()) {
            const auto [lo, hi] = age_group_bounds(g);
            hits += (lo <= y && y < hi);
        }
        CHECK(hits == 1);
        CHECK(age_group_of(AgeValue::exact(y)) == testsupport::oracle_age_group(AgeValue::exact(y)));
    }
}

TEST_CASE("search: documented examples") {
    const Index& idx = fixture_index();
    auto q = drug_q({"aspirin"});
    q.cofilter = {"liver failure"};
    CHECK(search_articles(idx, q) == std::vector<std::string>{"101", "102"});

    auto exact = drug_q({"ibuprofen"});
    exact.age_exact = 6;
    CHECK(search_articles(idx, exact) == std::vector<std::string>{"104"});

    auto female = drug_q({"ibuprofen"});
    female.gender = Gender::Female;
    CHECK(search_articles(idx, female) == std::vector<std::string>{"104"});

    CHECK(search_articles(idx, effect_q({"rash"})) == std::vector<std::string>{"103", "104", "102", "105"});
    CHECK(search_articles(idx, drug_q({"Tylenol"})) == std::vector<std::string>{"105"});
    CHECK(search_articles(idx, drug_q({"ASPIRIN 100 mg"})).size() == 3);
    CHECK(search_articles(idx, drug_q({"aspirin", "ibuprofen"})) == std::vector<std::string>{"103", "104", "101", "102"});

    auto years = drug_q({"aspirin"});
    years.year_range = std::pair{2020, 2030};
    CHECK(search_articles(idx, years) == std::vector<std::string>{"103"});

    auto group = effect_q({"nausea"});
    group.age_group = AgeGroup::Unknown;
    CHECK(search_articles(idx, group) == std::vector<std::string>{"103"});
}

TEST_CASE("search: invalid queries") {
    const Index& idx = fixture_index();
    CHECK_THROWS_AS(search_articles(idx, drug_q({})), InvalidQuery);
    CHECK_THROWS_AS(search_articles(idx, drug_q({"...", " "})), InvalidQuery);
    auto both = drug_q({"aspirin"});
    both.age_exact = 6;
    both.age_group = AgeGroup::Child;
    CHECK_THROWS_AS(search_articles(idx, both), InvalidQuery);
    CHECK(search_articles(idx, drug_q({"unknown drug"})).empty());
}

TEST_CASE("stats: documented examples") {
    const Index& idx = fixture_index();
    CHECK(yearly_counts(idx, drug_q({"aspirin"})) == std::map<int, std::size_t>{{2019, 2}, {2021, 1}});
    CHECK(yearly_counts(idx, drug_q({"nothing"})).empty());

    const auto top = top_cooccurring(idx, drug_q({"aspirin"}));
    CHECK(counts(top) == std::vector<std::pair<std::string, std::size_t>>{{"nausea", 3}, {"liver failure", 2}, {"rash", 2}});
    REQUIRE(top.size() == 3);
    CHECK(top[0].proportion == doctest::Approx(3.0 / 7.0).epsilon(1e-12));
    CHECK(top[1].proportion == doctest::Approx(2.0 / 7.0).epsilon(1e-12));
    CHECK(top[0].rarity_tier == 1);
    CHECK(top[1].rarity_tier == 2);
    CHECK(top[2].rarity_tier == 3);

    const auto drugs = top_cooccurring(idx, effect_q({"nausea"}));
    CHECK(counts(drugs) ==
          std::vector<std::pair<std::string, std::size_t>>{{"aspirin", 3}, {"acetaminophen", 1}, {"ibuprofen", 1}});

    const auto demo = demographic_distribution(idx, drug_q({"aspirin"}));
    CHECK(demo == DemographicTally{{{AgeGroup::Child, Gender::Male}, 1},
                                   {{AgeGroup::Adult, Gender::Female}, 1},
                                   {{AgeGroup::Unknown, Gender::Unknown}, 1}});
    CHECK(demographic_distribution(idx, drug_q({"nothing"})).empty());

    CHECK(counts(group_breakdown(idx, drug_q({"aspirin"}), Gender::Male)) ==
          std::vector<std::pair<std::string, std::size_t>>{{"liver failure", 1}, {"nausea", 1}});
    CHECK(group_breakdown(idx, drug_q({"aspirin"}), AgeGroup::Neonate).empty());
    CHECK(group_breakdown(idx, effect_q({"liver failure"}), AgeGroup::Elderly) ==
          top_cooccurring(idx, [] {
              auto q = effect_q({"liver failure"});
              q.age_group = AgeGroup::Elderly;
              return q;
          }(), 10));

    const auto cross = cross_breakdown(idx, effect_q({"rash"}));
    CHECK(cross.size() == 4);
    CHECK(cross.at({AgeGroup::Child, Gender::Female}).articles == 1);
    CHECK(counts(cross.at({AgeGroup::Child, Gender::Female}).top) ==
          std::vector<std::pair<std::string, std::size_t>>{{"ibuprofen", 1}});

    const Index single = Index::build({fixture()[0]});
    CHECK(cross_breakdown(single, drug_q({"aspirin"})).size() == 1);
}

TEST_CASE("rank_terms: ties, truncation and tiers") {
    TermTally t;
    for (int i = 0; i < 12; ++i) t["t" + std::string(1, static_cast<char>('a' + i))] = static_cast<std::size_t>(12 - i / 2);
    const auto r = rank_terms(t, 12);
    REQUIRE(r.size() == 12);
    CHECK(r[0].term == "ta");
    CHECK(r[1].term == "tb");
    std::vector<int> tiers;
    for (const auto& x : r) tiers.push_back(x.rarity_tier);
    CHECK(tiers == std::vector<int>{1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4});
    double sum = 0;
    for (const auto& x : r) sum += x.proportion;
    CHECK(std::abs(sum - 1.0) < 1e-9);
    const auto cut = rank_terms(t, 5);
    CHECK(cut.size() == 5);
    CHECK(cut[4].rarity_tier == 5);
    CHECK(cut[0].proportion == r[0].proportion);
    CHECK(rank_terms({}, 5).empty());
}

TEST_CASE("suggest") {
    const Index& idx = fixture_index();
    CHECK(idx.suggest(TermKind::Drug, "a") == std::vector<std::string>{"aspirin", "acetaminophen"});
    CHECK(idx.suggest(TermKind::Drug, "A", 1) == std::vector<std::string>{"aspirin"});
    CHECK(idx.suggest(TermKind::Effect, "n") == std::vector<std::string>{"nausea"});
    CHECK(idx.suggest(TermKind::Effect, "zz").empty());
}

TEST_CASE("random corpora agree with the brute-force oracle (property)") {
    testsupport::Rng rng(20241018);
    const testsupport::CorpusShape shape;
    int nonempty = 0;
    for (int corpus = 0; corpus < 3; ++corpus) {
        const auto records = testsupport::random_records(rng, shape);
        const Index idx = Index::build(records);
        for (int i = 0; i < 60; ++i) {
            const QuerySpec q = testsupport::random_query(rng, shape);
            const QuerySpec c = oracle_canonical(q);
            if (c.terms.empty()) {
                CHECK_THROWS_AS(search_articles(idx, q), InvalidQuery);
                continue;
            }
            const auto articles = testsupport::oracle_match(records, c);
            nonempty += !articles.empty();
            for (Exec exec : {Exec::Serial, Exec::Parallel}) {
                CHECK(search_articles(idx, q, exec) == testsupport::oracle_search(articles));
                CHECK(yearly_counts(idx, q, exec) == testsupport::oracle_yearly(articles));
                CHECK(top_cooccurring(idx, q, 50, exec) == testsupport::oracle_rank(articles, 50));
                CHECK(demographic_distribution(idx, q, exec) == testsupport::oracle_demo(articles));
                for (AgeGroup g : age_groups())
                    CHECK(group_breakdown(idx, q, g, 10, exec) ==
                          testsupport::oracle_rank(testsupport::oracle_select(articles, g), 10));
                for (Gender g : {Gender::Male, Gender::Female, Gender::Unknown})
                    CHECK(group_breakdown(idx, q, g, 10, exec) ==
                          testsupport::oracle_rank(testsupport::oracle_select(articles, g), 10));
                for (const auto& [cell, cc] : cross_breakdown(idx, q, 10, exec)) {
                    auto sel = testsupport::oracle_select(testsupport::oracle_select(articles, cell.first), cell.second);
                    CHECK(cc.articles == sel.size());
                    CHECK(cc.top == testsupport::oracle_rank(sel, 10));
                }
            }
            const StatsBundle b = compute_stats(idx, q);
            CHECK(b.total == articles.size());
            CHECK(b.top_terms == top_cooccurring(idx, q));
            CHECK(b.demo == demographic_distribution(idx, q));
        }
    }
    CHECK(nonempty > 60);
}

TEST_CASE("conservation and monotonicity (property)") {
    testsupport::Rng rng(77);
    const testsupport::CorpusShape shape;
    const auto records = testsupport::random_records(rng, shape);
    const Index idx = Index::build(records);
    for (int i = 0; i < 150; ++i) {
        QuerySpec q = testsupport::random_query(rng, shape);
        q.terms.push_back(testsupport::drug_name(0));
        q.terms.push_back(testsupport::effect_name(0));
        const auto articles = match_articles(idx, q);
        const auto yearly = yearly_counts(idx, q);
        std::size_t with_year = 0;
        for (const auto& a : articles) with_year += a.year.has_value();
        CHECK(std::accumulate(yearly.begin(), yearly.end(), std::size_t{0},
                              [](std::size_t s, const auto& kv) { return s + kv.second; }) == with_year);
        const auto demo = demographic_distribution(idx, q);
        CHECK(std::accumulate(demo.begin(), demo.end(), std::size_t{0},
                              [](std::size_t s, const auto& kv) { return s + kv.second; }) == articles.size());
        const auto full = top_cooccurring(idx, q, 1u << 20);
        if (!full.empty()) {
            double sum = 0;
            for (const auto& t : full) {
                CHECK(t.proportion > 0.0);
                CHECK(t.proportion <= 1.0);
                sum += t.proportion;
            }
            CHECK(std::abs(sum - 1.0) < 1e-9);
        }
        std::size_t cross_total = 0;
        for (const auto& [cell, cc] : cross_breakdown(idx, q)) {
            CHECK(cc.articles == demo.at(cell));
            cross_total += cc.articles;
        }
        CHECK(cross_total == articles.size());

        QuerySpec narrower = q;
        switch (i % 4) {
            case 0:
                if (!narrower.gender) narrower.gender = Gender::Female;
                break;
            case 1:
                if (!narrower.year_range) narrower.year_range = std::pair{2005, 2015};
                break;
            case 2:
                if (narrower.cofilter.empty()) narrower.cofilter.push_back(testsupport::effect_name(1));
                break;
            default:
                if (!narrower.age_exact && !narrower.age_group) narrower.age_group = AgeGroup::Adult;
                break;
        }
        CHECK(match_articles(idx, narrower).size() <= articles.size());
    }
}

TEST_CASE("kernels: omp equals serial") {
    testsupport::Rng rng(5);
    const testsupport::CorpusShape shape{2000, 30, 50};
    const Index idx = Index::build(testsupport::random_records(rng, shape));
    for (int i = 0; i < 40; ++i) {
        const QuerySpec q = idx.canonicalize([&] {
            QuerySpec x = testsupport::random_query(rng, shape);
            x.terms.push_back(testsupport::drug_name(1));
            return x;
        }());
        const auto cand = idx.candidates(q);
        const auto fs = kernels::serial::filter(idx, q, cand);
        CHECK(kernels::omp::filter(idx, q, cand) == fs);
        const auto cs = kernels::serial::collapse(idx, q.kind, fs);
        CHECK(kernels::omp::collapse(idx, q.kind, fs) == cs);
        CHECK(kernels::omp::count_terms(cs) == kernels::serial::count_terms(cs));
        CHECK(kernels::omp::count_demographics(cs) == kernels::serial::count_demographics(cs));
    }
}
