#include "drugwatch/linearize.hpp"

#include "drugwatch/error.hpp"
#include "drugwatch/text.hpp"

namespace drugwatch {

namespace {

bool is_tag_char(char c) noexcept { return (c >= 'A' && c <= 'Z') || c == '_'; }

/// Length of "NAME]" starting at `pos`, or 0 when there is no tag body there.
std::size_t tag_body_length(std::string_view s, std::size_t pos) noexcept {
    std::size_t i = pos;
    while (i < s.size() && is_tag_char(s[i])) ++i;
    if (i == pos || i >= s.size() || s[i] != ']') return 0;
    return i - pos + 1;
}

void append_escaped(std::string& out, std::string_view span) {
    std::size_t i = 0;
    while (i < span.size()) {
        if (span[i] != '[') {
            out.push_back(span[i++]);
            continue;
        }
        std::size_t run_end = i;
        while (run_end < span.size() && span[run_end] == '[') ++run_end;
        if (tag_body_length(span, run_end) > 0) out.push_back('[');
        out.append(span.substr(i, run_end - i));
        i = run_end;
    }
}

struct Token {
    std::string_view tag;  // empty for the trailing text segment
    std::size_t pos = 0;
};

}  // namespace

std::string linearize(const PharmaEvent& event) {
    std::string out = "[EV] ";
    out += to_string(event.event_type);
    for (Role role : all_roles()) {
        auto it = event.args.find(role);
        if (it == event.args.end()) continue;
        for (const Span& span : it->second) {
            out += " [";
            out += role_tag(role);
            out += "] ";
            append_escaped(out, span.text);
        }
    }
    return out;
}

PharmaEvent delinearize(std::string_view seq) {
    // Split into (tag, raw segment) pairs while decoding escapes.
    struct Segment {
        std::string tag;
        std::size_t tag_pos;
        std::string body;
    };
    std::vector<Segment> segments;
    std::string leading;

    std::size_t i = 0;
    while (i < seq.size()) {
        if (seq[i] != '[') {
            (segments.empty() ? leading : segments.back().body).push_back(seq[i++]);
            continue;
        }
        std::size_t run_end = i;
        while (run_end < seq.size() && seq[run_end] == '[') ++run_end;
        const std::size_t body_len = tag_body_length(seq, run_end);
        if (body_len == 0) {
            (segments.empty() ? leading : segments.back().body).append(seq.substr(i, run_end - i));
            i = run_end;
            continue;
        }
        const std::size_t run = run_end - i;
        if (run == 1) {
            segments.push_back({std::string(seq.substr(run_end, body_len - 1)), i, {}});
            i = run_end + body_len;
        } else {
            (segments.empty() ? leading : segments.back().body).append(run - 1, '[');
            i = run_end;
        }
    }

    if (!text::trim(leading).empty() || segments.empty() || segments.front().tag != "EV")
        throw ParseError("sequence does not start with [EV]", segments.empty() ? 0 : segments.front().tag_pos);

    PharmaEvent event;
    const std::string type_text(text::trim(segments.front().body));
    auto type = parse_event_type(type_text);
    if (!type) {
        const auto& body = segments.front().body;
        const std::size_t lead = body.find_first_not_of(" \t\n\r");
        throw ParseError("unknown event type '" + type_text + "'",
                         segments.front().tag_pos + 4 + (lead == std::string::npos ? body.size() : lead));
    }
    event.event_type = *type;

    std::vector<std::string> unknown;
    for (std::size_t s = 1; s < segments.size(); ++s) {
        const auto& seg = segments[s];
        if (seg.tag == "EV") throw ParseError("unexpected second [EV]", seg.tag_pos);
        auto role = role_from_tag(seg.tag);
        if (!role) {
            unknown.push_back("[" + seg.tag + "]");
            continue;
        }
        std::string body(text::trim(seg.body));
        if (body.empty()) throw ParseError("empty span after [" + seg.tag + "]", seg.tag_pos);
        event.args[*role].push_back(Span{std::move(body), std::nullopt, std::nullopt});
    }
    if (!unknown.empty()) {
        std::string list;
        for (const auto& u : unknown) list += (list.empty() ? "" : ", ") + u;
        throw SchemaError("unknown role tag(s): " + list);
    }
    validate_event(event);
    return event;
}

}  // namespace drugwatch
