#pragma once

#include "drugwatch/event.hpp"

#include <string>
#include <string_view>

namespace drugwatch {

/// Canonical tagged sequence: "[EV] <type>" followed by "[<TAG>] <span>" for every span in
/// registry order. A run of '[' that would otherwise read as a tag inside span text gets one
/// extra '[' so the sequence stays unambiguous.
[[nodiscard]] std::string linearize(const PharmaEvent& event);

/// Inverse of linearize. Throws ParseError for a missing "[EV]" prefix, an unknown event
/// type or an empty span; SchemaError for a tag outside the registry; InvariantError for a
/// sub-role without its parent.
[[nodiscard]] PharmaEvent delinearize(std::string_view seq);

}  // namespace drugwatch
