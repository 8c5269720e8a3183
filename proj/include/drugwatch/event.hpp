#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace drugwatch {

enum class EventType { ADE, PTE };

[[nodiscard]] std::string_view to_string(EventType t) noexcept;
[[nodiscard]] std::optional<EventType> parse_event_type(std::string_view s) noexcept;

/// Closed PHEE role registry. Enumerator order is the canonical emission order:
/// each main role is followed immediately by its sub-roles.
enum class Role {
    Subject,
    SubjectAge,
    SubjectGender,
    SubjectRace,
    SubjectPopulation,
    SubjectDisorder,
    Treatment,
    TreatmentDrug,
    TreatmentDosage,
    TreatmentRoute,
    TreatmentFrequency,
    TreatmentDuration,
    TreatmentTimeElapsed,
    TreatmentDisorder,
    TreatmentCombination,
    Effect,
};

inline constexpr std::size_t kRoleCount = 16;

[[nodiscard]] const std::array<Role, kRoleCount>& all_roles() noexcept;

/// Dotted name, e.g. "treatment.drug".
[[nodiscard]] std::string_view role_name(Role r) noexcept;
/// Linearization tag name, e.g. "TREATMENT_DRUG".
[[nodiscard]] std::string_view role_tag(Role r) noexcept;
[[nodiscard]] std::optional<Role> role_from_name(std::string_view dotted) noexcept;
[[nodiscard]] std::optional<Role> role_from_tag(std::string_view tag) noexcept;

[[nodiscard]] bool is_main_role(Role r) noexcept;
/// Parent main role; a main role is its own parent.
[[nodiscard]] Role parent_role(Role r) noexcept;

struct Span {
    std::string text;
    std::optional<std::size_t> start;  // offsets into the source sentence, [start, end)
    std::optional<std::size_t> end;

    bool operator==(const Span&) const = default;
};

struct PharmaEvent {
    EventType event_type = EventType::ADE;
    std::map<Role, std::vector<Span>> args;

    bool operator==(const PharmaEvent&) const = default;

    /// Spans for `r`, or an empty list.
    [[nodiscard]] const std::vector<Span>& spans(Role r) const;
};

/// Throws InvariantError when a role has an empty span list or a sub-role appears
/// without its parent main role.
void validate_event(const PharmaEvent& e);

}  // namespace drugwatch
