#pragma once

#include "drugwatch/normalize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace testsupport {

struct AgeCase {
    std::string input;
    drugwatch::AgeValue expected;
};

struct GenderCase {
    std::string input;
    drugwatch::Gender expected;
};

/// `expected` empty means normalize_term must throw.
struct TermCase {
    std::string input;
    std::optional<std::string> expected;
};

inline std::vector<AgeCase> age_matrix() {
    using drugwatch::AgeValue;
    return {
        {"6 years old", AgeValue::exact(6)},
        {"6-year-old", AgeValue::exact(6)},
        {"6 year old", AgeValue::exact(6)},
        {"a 45-year-old woman", AgeValue::exact(45)},
        {"72-years-old", AgeValue::exact(72)},
        {"2.5-year-old", AgeValue::exact(2.5)},
        {"a 6-year-old child", AgeValue::exact(6)},
        {"aged 80", AgeValue::exact(80)},
        {"Aged 3", AgeValue::exact(3)},
        {"34 yo", AgeValue::exact(34)},
        {"34yo", AgeValue::exact(34)},
        {"19 y/o", AgeValue::exact(19)},
        {"3 months", AgeValue::exact(0.25)},
        {"18-month-old", AgeValue::exact(1.5)},
        {"6 weeks", AgeValue::exact(6.0 / 52.0)},
        {"1 week", AgeValue::exact(1.0 / 52.0)},
        {"10 days", AgeValue::exact(10.0 / 365.0)},
        {"3-day-old", AgeValue::exact(3.0 / 365.0)},
        {"in his sixties", AgeValue::range(60, 69)},
        {"in her twenties", AgeValue::range(20, 29)},
        {"in his NINETIES", AgeValue::range(90, 99)},
        {"in their forties", AgeValue::range(40, 49)},
        {"neonate", AgeValue::range(0, 28.0 / 365.0, true)},
        {"an infant", AgeValue::range(28.0 / 365.0, 2, true)},
        {"a child", AgeValue::range(2, 12, true)},
        {"adolescent", AgeValue::range(12, 18, true)},
        {"teenager", AgeValue::range(12, 18, true)},
        {"adult", AgeValue::range(18, 65, true)},
        {"elderly woman", AgeValue::range(65, 150)},
        {"60 to 69 years", AgeValue::range(60, 69)},
        {"2 to under 12 years", AgeValue::range(2, 12, true)},
        {"middle-aged", AgeValue::unknown()},
        {"the patient", AgeValue::unknown()},
        {"", AgeValue::unknown()},
        {"children", AgeValue::unknown()},
        {"6 years", AgeValue::unknown()},
        {"200 years old", AgeValue::unknown()},
        {"70 to 60 years", AgeValue::unknown()},
    };
}

inline std::vector<GenderCase> gender_matrix() {
    using drugwatch::Gender;
    return {
        {"a 45-year-old woman", Gender::Female},
        {"the patient", Gender::Unknown},
        {"male and female twins", Gender::Unknown},
        {"boy", Gender::Male},
        {"A Girl", Gender::Female},
        {"he", Gender::Male},
        {"She", Gender::Female},
        {"his wife", Gender::Male},
        {"her husband", Gender::Female},
        {"an elderly gentleman", Gender::Male},
        {"elderly lady", Gender::Female},
        {"MAN", Gender::Male},
        {"female", Gender::Female},
        {"women", Gender::Unknown},
        {"mother", Gender::Unknown},
        {"himself", Gender::Unknown},
        {"shepherd", Gender::Unknown},
        {"he and she", Gender::Unknown},
        {"", Gender::Unknown},
        {"6-year-old boy", Gender::Male},
    };
}

inline std::vector<TermCase> term_matrix() {
    return {
        {"Aspirin 100 mg oral", "aspirin"},
        {"TEN", "toxic epidermal necrolysis"},
        {"  Liver   Failure. ", "liver failure"},
        {"Paracetamol", "acetaminophen"},
        {"Tylenol 500mg tablets", "acetaminophen"},
        {"ibuprofen 400 mg/day", "ibuprofen"},
        {"\"warfarin\"", "warfarin"},
        {"\xE2\x80\x9CRash\xE2\x80\x9D", "rash"},
        {"vancomycin iv", "vancomycin"},
        {"Amoxicillin capsules", "amoxicillin"},
        {"heparin injection", "heparin"},
        {"insulin 10 IU", "insulin"},
        {"Acute Liver Failure", "liver failure"},
        {"seizures,", "seizure"},
        {"methotrexate 2.5 mg", "methotrexate"},
        {"levothyroxine 50 mcg", "levothyroxine"},
        {"digoxin 0.25mg oral tablet", "digoxin"},
        {"fentanyl 25 \xC2\xB5g/h", "fentanyl"},
        {"(cisplatin)", "cisplatin"},
        {"Stevens-Johnson   Syndrome", "stevens-johnson syndrome"},
        {"amoxicillin-clavulanate", "amoxicillin"},
        {"unknowndrug X", "unknowndrug x"},
        {"100 mg", std::nullopt},
        {"...", std::nullopt},
        {"", std::nullopt},
    };
}

}  // namespace testsupport
