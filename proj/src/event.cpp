#include "drugwatch/event.hpp"

#include "drugwatch/error.hpp"

namespace drugwatch {

namespace {

struct RoleInfo {
    Role role;
    std::string_view name;
    std::string_view tag;
    Role parent;
};

constexpr std::array<RoleInfo, kRoleCount> kRoles = {{
    {Role::Subject, "subject", "SUBJECT", Role::Subject},
    {Role::SubjectAge, "subject.age", "SUBJECT_AGE", Role::Subject},
    {Role::SubjectGender, "subject.gender", "SUBJECT_GENDER", Role::Subject},
    {Role::SubjectRace, "subject.race", "SUBJECT_RACE", Role::Subject},
    {Role::SubjectPopulation, "subject.population", "SUBJECT_POPULATION", Role::Subject},
    {Role::SubjectDisorder, "subject.disorder", "SUBJECT_DISORDER", Role::Subject},
    {Role::Treatment, "treatment", "TREATMENT", Role::Treatment},
    {Role::TreatmentDrug, "treatment.drug", "TREATMENT_DRUG", Role::Treatment},
    {Role::TreatmentDosage, "treatment.dosage", "TREATMENT_DOSAGE", Role::Treatment},
    {Role::TreatmentRoute, "treatment.route", "TREATMENT_ROUTE", Role::Treatment},
    {Role::TreatmentFrequency, "treatment.frequency", "TREATMENT_FREQUENCY", Role::Treatment},
    {Role::TreatmentDuration, "treatment.duration", "TREATMENT_DURATION", Role::Treatment},
    {Role::TreatmentTimeElapsed, "treatment.time_elapsed", "TREATMENT_TIME_ELAPSED", Role::Treatment},
    {Role::TreatmentDisorder, "treatment.disorder", "TREATMENT_DISORDER", Role::Treatment},
    {Role::TreatmentCombination, "treatment.combination", "TREATMENT_COMBINATION", Role::Treatment},
    {Role::Effect, "effect", "EFFECT", Role::Effect},
}};

constexpr std::array<Role, kRoleCount> kRoleOrder = [] {
    std::array<Role, kRoleCount> out{};
    for (std::size_t i = 0; i < kRoleCount; ++i) out[i] = kRoles[i].role;
    return out;
}();

const RoleInfo& info(Role r) noexcept { return kRoles[static_cast<std::size_t>(r)]; }

}  // namespace

std::string_view to_string(EventType t) noexcept { return t == EventType::ADE ? "ADE" : "PTE"; }

std::optional<EventType> parse_event_type(std::string_view s) noexcept {
    if (s == "ADE") return EventType::ADE;
    if (s == "PTE") return EventType::PTE;
    return std::nullopt;
}

const std::array<Role, kRoleCount>& all_roles() noexcept { return kRoleOrder; }

std::string_view role_name(Role r) noexcept { return info(r).name; }
std::string_view role_tag(Role r) noexcept { return info(r).tag; }

std::optional<Role> role_from_name(std::string_view dotted) noexcept {
    for (const auto& ri : kRoles)
        if (ri.name == dotted) return ri.role;
    return std::nullopt;
}

std::optional<Role> role_from_tag(std::string_view tag) noexcept {
    for (const auto& ri : kRoles)
        if (ri.tag == tag) return ri.role;
    return std::nullopt;
}

bool is_main_role(Role r) noexcept { return info(r).parent == r; }
Role parent_role(Role r) noexcept { return info(r).parent; }

const std::vector<Span>& PharmaEvent::spans(Role r) const {
    static const std::vector<Span> kEmpty;
    auto it = args.find(r);
    return it == args.end() ? kEmpty : it->second;
}

void validate_event(const PharmaEvent& e) {
    for (const auto& [role, spans] : e.args) {
        if (spans.empty())
            throw InvariantError("role '" + std::string(role_name(role)) + "' has no spans");
        if (!is_main_role(role) && !e.args.count(parent_role(role)))
            throw InvariantError("sub-role '" + std::string(role_name(role)) + "' present without parent '" +
                                 std::string(role_name(parent_role(role))) + "'");
        for (const auto& s : spans)
            if (s.start && s.end && *s.start >= *s.end)
                throw InvariantError("span '" + s.text + "' has empty or inverted offsets");
    }
}

}  // namespace drugwatch
