#pragma once

#include "drugwatch/event.hpp"

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace drugwatch {

struct ModelParse {
    std::vector<PharmaEvent> events;
    std::vector<std::string> warnings;
};

/// Parses the model event schema:
///   [{"event_type": "ADE"|"PTE", "arguments": {"<dotted role>": ["span", ...]}}]
/// `null` is the empty list. Spans may also be objects {"text", "start", "end"}.
/// Unknown roles are dropped with a warning; a sub-role whose parent is missing is kept and
/// reported. Throws ParseError when `body` is not JSON and SchemaError (naming the JSON
/// path) when the shape is wrong.
[[nodiscard]] ModelParse parse_model_json(std::string_view body);
[[nodiscard]] ModelParse parse_model_json(const nlohmann::json& doc);
[[nodiscard]] inline ModelParse parse_model_json(const std::string& body) {
    return parse_model_json(std::string_view(body));
}
[[nodiscard]] inline ModelParse parse_model_json(const char* body) { return parse_model_json(std::string_view(body)); }

/// Serializes events in the same schema. With offsets, spans that carry them become objects.
[[nodiscard]] nlohmann::ordered_json events_to_json(const std::vector<PharmaEvent>& events,
                                                    bool with_offsets = false);

}  // namespace drugwatch
