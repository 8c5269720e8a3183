#pragma once

#include "drugwatch/event.hpp"

#include <string>
#include <utility>
#include <vector>

namespace testsupport {

using Sentence = std::vector<drugwatch::PharmaEvent>;

struct MetricSet {
    std::string name;
    std::vector<Sentence> gold, pred;
};

inline drugwatch::PharmaEvent ev(drugwatch::EventType type,
                                 std::vector<std::pair<drugwatch::Role, std::string>> args) {
    drugwatch::PharmaEvent e;
    e.event_type = type;
    for (auto& [role, text] : args) e.args[role].push_back(drugwatch::Span{std::move(text), std::nullopt, std::nullopt});
    return e;
}

inline drugwatch::PharmaEvent ade(std::vector<std::pair<drugwatch::Role, std::string>> args) {
    return ev(drugwatch::EventType::ADE, std::move(args));
}

/// Handcrafted gold/pred pairs covering exact, partial, missing, extra and repeated arguments.
inline std::vector<MetricSet> handcrafted_metric_sets() {
    using drugwatch::EventType;
    using R = drugwatch::Role;
    const auto full = ade({{R::Subject, "a 6-year-old boy"},
                           {R::SubjectAge, "6-year-old"},
                           {R::SubjectGender, "boy"},
                           {R::Treatment, "aspirin"},
                           {R::TreatmentDrug, "aspirin"},
                           {R::Effect, "rash"}});
    std::vector<MetricSet> sets;
    sets.push_back({"identical", {{full}}, {{full}}});
    sets.push_back({"dose suffix", {{ade({{R::Treatment, "aspirin"}, {R::TreatmentDrug, "aspirin"}})}},
                    {{ade({{R::Treatment, "aspirin 100mg"}, {R::TreatmentDrug, "aspirin 100mg"}})}}});
    sets.push_back({"longer effect", {{ade({{R::Effect, "liver failure"}})}}, {{ade({{R::Effect, "acute liver failure"}})}}});
    sets.push_back({"disjoint", {{ade({{R::Effect, "rash"}})}}, {{ade({{R::Effect, "nausea"}})}}});
    sets.push_back({"empty prediction", {{full}}, {{}}});
    sets.push_back({"empty gold", {{}}, {{full}}});
    sets.push_back({"both empty", {{}, {}}, {{}, {}}});
    sets.push_back({"repeated gold span", {{ade({{R::Effect, "rash"}, {R::Effect, "rash"}})}}, {{ade({{R::Effect, "rash"}})}}});
    sets.push_back({"case difference", {{ade({{R::Effect, "Rash"}})}}, {{ade({{R::Effect, "rash"}})}}});
    sets.push_back({"events merged",
                    {{ade({{R::Treatment, "aspirin"}, {R::Effect, "rash"}}), ade({{R::Treatment, "ibuprofen"}, {R::Effect, "ulcer"}})}},
                    {{ade({{R::Treatment, "aspirin"}, {R::Treatment, "ibuprofen"}, {R::Effect, "rash"}, {R::Effect, "ulcer"}})}}});
    sets.push_back({"wrong role", {{ade({{R::Effect, "rash"}})}}, {{ade({{R::Treatment, "rash"}})}}});
    sets.push_back({"sub-role variant", {{ade({{R::Subject, "child"}, {R::SubjectAge, "6-year-old"}})}},
                    {{ade({{R::Subject, "child"}, {R::SubjectAge, "6 year old"}})}}});
    sets.push_back({"three sentences",
                    {{full}, {ade({{R::Effect, "nausea"}})}, {}},
                    {{ade({{R::Treatment, "aspirin"}, {R::TreatmentDrug, "aspirin"}, {R::Effect, "skin rash"}})},
                     {},
                     {ade({{R::Effect, "fever"}})}}});
    sets.push_back({"event type ignored", {{ev(EventType::PTE, {{R::Treatment, "insulin"}, {R::Effect, "glucose control"}})}},
                    {{ev(EventType::ADE, {{R::Treatment, "insulin"}, {R::Effect, "glucose control"}})}}});
    sets.push_back({"overlap tie", {{ade({{R::Effect, "a b"}, {R::Effect, "b c"}})}}, {{ade({{R::Effect, "b"}})}}});
    sets.push_back({"split prediction", {{ade({{R::Effect, "acute kidney injury"}})}},
                    {{ade({{R::Effect, "acute kidney"}, {R::Effect, "kidney injury"}})}}});
    sets.push_back({"repeated tokens", {{ade({{R::Treatment, "the the drug"}})}}, {{ade({{R::Treatment, "the drug"}})}}});
    sets.push_back({"long subject", {{ade({{R::Subject, "a 67-year-old woman with hypertension"}, {R::SubjectAge, "67-year-old"}})}},
                    {{ade({{R::Subject, "67-year-old woman"}, {R::SubjectAge, "67-year-old"}})}}});
    sets.push_back({"combination",
                    {{ade({{R::Treatment, "ibuprofen and lisinopril"},
                           {R::TreatmentDrug, "ibuprofen"},
                           {R::TreatmentDrug, "lisinopril"},
                           {R::TreatmentCombination, "ibuprofen and lisinopril"},
                           {R::Effect, "acute kidney injury"}})}},
                    {{ade({{R::Treatment, "ibuprofen"},
                           {R::Treatment, "lisinopril"},
                           {R::TreatmentDrug, "ibuprofen"},
                           {R::TreatmentDrug, "lisinopril"},
                           {R::Effect, "kidney injury"}})}}});
    {
        MetricSet ten{"ten sentences", {}, {}};
        const std::vector<std::string> drugs = {"aspirin", "warfarin", "heparin", "vancomycin", "lithium"};
        const std::vector<std::string> effects = {"rash", "bleeding", "thrombocytopenia", "nephrotoxicity", "tremor"};
        for (std::size_t i = 0; i < 10; ++i) {
            const auto& d = drugs[i % 5];
            const auto& e = effects[(i * 3) % 5];
            ten.gold.push_back({ade({{R::Treatment, d}, {R::TreatmentDrug, d}, {R::Effect, e}})});
            if (i % 4 == 0) ten.pred.push_back({});
            else if (i % 4 == 1) ten.pred.push_back({ade({{R::Treatment, d}, {R::TreatmentDrug, d}, {R::Effect, e}})});
            else if (i % 4 == 2) ten.pred.push_back({ade({{R::Treatment, d + " 5 mg"}, {R::Effect, "severe " + e}})});
            else ten.pred.push_back({ade({{R::Treatment, d}, {R::Effect, e}, {R::Effect, "fever"}})});
        }
        sets.push_back(std::move(ten));
    }
    sets.push_back({"all sub-roles",
                    {{ade({{R::Subject, "patients with epilepsy"},
                           {R::SubjectPopulation, "patients"},
                           {R::SubjectDisorder, "epilepsy"},
                           {R::SubjectRace, "asian"},
                           {R::Treatment, "carbamazepine 200 mg twice daily orally for 3 weeks"},
                           {R::TreatmentDrug, "carbamazepine"},
                           {R::TreatmentDosage, "200 mg"},
                           {R::TreatmentFrequency, "twice daily"},
                           {R::TreatmentRoute, "orally"},
                           {R::TreatmentDuration, "for 3 weeks"},
                           {R::TreatmentTimeElapsed, "after 2 weeks"},
                           {R::TreatmentDisorder, "seizures"},
                           {R::Effect, "stevens-johnson syndrome"}})}},
                    {{ade({{R::Subject, "patients"},
                           {R::SubjectPopulation, "patients"},
                           {R::SubjectDisorder, "epilepsy"},
                           {R::Treatment, "carbamazepine 200 mg"},
                           {R::TreatmentDrug, "carbamazepine"},
                           {R::TreatmentDosage, "200 mg"},
                           {R::TreatmentFrequency, "daily"},
                           {R::TreatmentRoute, "oral"},
                           {R::TreatmentTimeElapsed, "2 weeks"},
                           {R::Effect, "stevens-johnson syndrome"},
                           {R::Effect, "fever"}})}}});
    sets.push_back({"extra predicted event", {{full}},
                    {{full, ade({{R::Treatment, "amoxicillin"}, {R::TreatmentDrug, "amoxicillin"}, {R::Effect, "rash"}})}}});
    sets.push_back({"duplicated prediction", {{ade({{R::Effect, "rash"}})}}, {{ade({{R::Effect, "rash"}}), ade({{R::Effect, "rash"}})}}});
    sets.push_back({"whitespace variants", {{ade({{R::Effect, "liver  failure"}})}}, {{ade({{R::Effect, " liver failure"}})}}});
    return sets;
}

}  // namespace testsupport
