#include "drugwatch/model_json.hpp"

#include "drugwatch/error.hpp"

namespace drugwatch {

using json = nlohmann::json;

ModelParse parse_model_json(std::string_view body) {
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
    }
    return parse_model_json(doc);
}

namespace {

Span parse_span(const json& v, const std::string& path) {
    if (v.is_string()) return Span{v.get<std::string>(), std::nullopt, std::nullopt};
    if (v.is_object()) {
        auto t = v.find("text");
        if (t == v.end() || !t->is_string()) throw SchemaError(path + ".text: expected a string");
        Span s{t->get<std::string>(), std::nullopt, std::nullopt};
        auto b = v.find("start");
        auto e = v.find("end");
        if (b != v.end() && e != v.end() && b->is_number_unsigned() && e->is_number_unsigned()) {
            s.start = b->get<std::size_t>();
            s.end = e->get<std::size_t>();
        }
        return s;
    }
    throw SchemaError(path + ": expected a span string");
}

}  // namespace

ModelParse parse_model_json(const json& doc) {
    ModelParse out;
    if (doc.is_null()) return out;
    if (!doc.is_array()) throw SchemaError("$: expected an array of events");

    for (std::size_t i = 0; i < doc.size(); ++i) {
        const std::string path = "$[" + std::to_string(i) + "]";
        const json& ev = doc[i];
        if (!ev.is_object()) throw SchemaError(path + ": expected an event object");
        auto type_it = ev.find("event_type");
        if (type_it == ev.end() || !type_it->is_string())
            throw SchemaError(path + ".event_type: expected \"ADE\" or \"PTE\"");
        auto type = parse_event_type(type_it->get<std::string>());
        if (!type) throw SchemaError(path + ".event_type: unknown event type '" + type_it->get<std::string>() + "'");

        PharmaEvent event;
        event.event_type = *type;
        auto args_it = ev.find("arguments");
        if (args_it != ev.end() && !args_it->is_null()) {
            if (!args_it->is_object()) throw SchemaError(path + ".arguments: expected an object");
            for (const auto& [name, value] : args_it->items()) {
                const std::string apath = path + ".arguments." + name;
                auto role = role_from_name(name);
                if (!role) {
                    out.warnings.push_back(apath + ": unknown role '" + name + "' dropped");
                    continue;
                }
                std::vector<Span> spans;
                if (value.is_array()) {
                    for (std::size_t k = 0; k < value.size(); ++k)
                        spans.push_back(parse_span(value[k], apath + "[" + std::to_string(k) + "]"));
                } else if (!value.is_null()) {
                    spans.push_back(parse_span(value, apath));
                }
                std::erase_if(spans, [](const Span& s) { return s.text.empty(); });
                if (spans.empty()) continue;
                auto& dst = event.args[*role];
                dst.insert(dst.end(), spans.begin(), spans.end());
            }
        }
        for (const auto& [role, spans] : event.args)
            if (!is_main_role(role) && !event.args.count(parent_role(role)))
                out.warnings.push_back(path + ": sub-role '" + std::string(role_name(role)) +
                                       "' without parent '" + std::string(role_name(parent_role(role))) + "'");
        out.events.push_back(std::move(event));
    }
    return out;
}

nlohmann::ordered_json events_to_json(const std::vector<PharmaEvent>& events, bool with_offsets) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& e : events) {
        nlohmann::ordered_json args = nlohmann::ordered_json::object();
        for (const auto& [role, spans] : e.args) {
            auto list = nlohmann::ordered_json::array();
            for (const auto& s : spans) {
                if (with_offsets && s.start && s.end)
                    list.push_back({{"text", s.text}, {"start", *s.start}, {"end", *s.end}});
                else
                    list.push_back(s.text);
            }
            args[std::string(role_name(role))] = std::move(list);
        }
        arr.push_back({{"event_type", std::string(to_string(e.event_type))}, {"arguments", std::move(args)}});
    }
    return arr;
}

}  // namespace drugwatch
