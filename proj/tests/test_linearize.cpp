#include "drugwatch/error.hpp"
#include "drugwatch/linearize.hpp"
#include "generators.hpp"

#include <doctest.h>

using namespace drugwatch;

namespace {

Span sp(std::string s) { return Span{std::move(s), {}, {}}; }

}  // namespace

TEST_CASE("canonical sequence for the age/drug/effect example") {
    PharmaEvent e;
    e.event_type = EventType::ADE;
    e.args[Role::Subject] = {sp("a 6-year-old boy")};
    e.args[Role::SubjectAge] = {sp("6-year-old")};
    e.args[Role::TreatmentDrug] = {sp("aspirin")};
    e.args[Role::Effect] = {sp("rash")};
    CHECK(linearize(e) == "[EV] ADE [SUBJECT] a 6-year-old boy [SUBJECT_AGE] 6-year-old [TREATMENT_DRUG] aspirin "
                          "[EFFECT] rash");
}

TEST_CASE("empty argument map and repeated spans") {
    PharmaEvent e;
    e.event_type = EventType::PTE;
    CHECK(linearize(e) == "[EV] PTE");
    e.event_type = EventType::ADE;
    e.args[Role::Effect] = {sp("rash"), sp("fever")};
    CHECK(linearize(e) == "[EV] ADE [EFFECT] rash [EFFECT] fever");
    CHECK(delinearize(linearize(e)) == e);
}

TEST_CASE("round trip of the example with its parent role") {
    PharmaEvent e;
    e.args[Role::Subject] = {sp("a 6-year-old boy")};
    e.args[Role::SubjectAge] = {sp("6-year-old")};
    e.args[Role::SubjectGender] = {sp("boy")};
    e.args[Role::Treatment] = {sp("aspirin")};
    e.args[Role::TreatmentDrug] = {sp("aspirin")};
    e.args[Role::Effect] = {sp("rash")};
    const auto seq = linearize(e);
    CHECK(seq == "[EV] ADE [SUBJECT] a 6-year-old boy [SUBJECT_AGE] 6-year-old [SUBJECT_GENDER] boy [TREATMENT] "
                 "aspirin [TREATMENT_DRUG] aspirin [EFFECT] rash");
    CHECK(delinearize(seq) == e);
}

TEST_CASE("delinearize errors") {
    CHECK_THROWS_AS(delinearize("ADE [EFFECT] rash"), ParseError);
    CHECK_THROWS_AS(delinearize(""), ParseError);
    CHECK_THROWS_AS(delinearize("[EV] XYZ"), ParseError);
    CHECK_THROWS_AS(delinearize("[EV] ADE [EV] PTE"), ParseError);
    CHECK_THROWS_AS(delinearize("[EV] ADE [EFFECT]"), ParseError);
    CHECK_THROWS_WITH_AS(delinearize("[EV] ADE [BOGUS] x"), doctest::Contains("[BOGUS]"), SchemaError);
    CHECK_THROWS_AS(delinearize("[EV] ADE [SUBJECT_AGE] 6"), InvariantError);
    try {
        (void)delinearize("[EV] QQQ");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 5);
    }
}

TEST_CASE("tag-like span text is escaped and restored") {
    PharmaEvent e;
    e.args[Role::Effect] = {sp("see [SUBJECT] and [[EV] here"), sp("x[")};
    const auto seq = linearize(e);
    CHECK(seq == "[EV] ADE [EFFECT] see [[SUBJECT] and [[[EV] here [EFFECT] x[");
    CHECK(delinearize(seq) == e);
}

TEST_CASE("delinearize trims spans and is tolerant of spacing") {
    const auto e = delinearize("[EV]   PTE[EFFECT]   improved   \n");
    CHECK(e.event_type == EventType::PTE);
    REQUIRE(e.spans(Role::Effect).size() == 1);
    CHECK(e.spans(Role::Effect)[0].text == "improved");
}

TEST_CASE("round trip property over random valid events") {
    testsupport::Rng rng(42);
    for (int i = 0; i < 3000; ++i) {
        const auto e = testsupport::random_event(rng, i % 3 == 0);
        const auto seq = linearize(e);
        const auto back = delinearize(seq);
        REQUIRE_MESSAGE(back == e, seq);
        CHECK(linearize(back) == seq);
    }
}
