#include "drugwatch/json_repair.hpp"

#include "drugwatch/error.hpp"
#include "drugwatch/text.hpp"

#include <vector>

namespace drugwatch {

namespace {

constexpr std::size_t npos = std::string_view::npos;

enum class Expect { Value, FirstValueOrClose, FirstKeyOrClose, Key, Colon, CommaOrClose, End };

enum class NumPhase { Sign, Zero, Int, Dot, Frac, Exp, ExpSign, ExpDigits };

enum class StrPhase { Normal, Escape, Unicode, Utf8, AwaitLowBackslash, AwaitLowU };

struct Frame {
    bool object = false;
    std::size_t comma_pos = npos;  // comma that introduced the member being parsed
    std::size_t key_start = npos;  // opening quote of the current key
};

bool is_hex(char c) noexcept {
    return text::is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

unsigned hex_value(char c) noexcept {
    if (text::is_digit(c)) return static_cast<unsigned>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
    return static_cast<unsigned>(c - 'A' + 10);
}

class Repairer {
public:
    explicit Repairer(std::string_view in) : in_(in) {}

    std::string run() {
        if (text::trim(in_).empty()) return "null";
        for (pos_ = 0; pos_ < in_.size(); ++pos_) step(in_[pos_]);
        return finish();
    }

private:
    enum class Token { None, String, Number, Literal };

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void value_done() { expect_ = stack_.empty() ? Expect::End : Expect::CommaOrClose; }

    void step(char c) {
        switch (token_) {
            case Token::String: return string_char(c);
            case Token::Literal: return literal_char(c);
            case Token::Number:
                if (number_char(c)) return;
                break;  // number ended; reprocess c as structure
            case Token::None: break;
        }
        structural(c);
    }

    void structural(char c) {
        if (text::is_space(c) && c != '\f' && c != '\v') return;
        switch (expect_) {
            case Expect::End:
                fail("unexpected content after the top-level value");
            case Expect::Colon:
                if (c != ':') fail("expected ':'");
                expect_ = Expect::Value;
                return;
            case Expect::FirstKeyOrClose:
                if (c == '}') return close('}');
                [[fallthrough]];
            case Expect::Key:
                if (c != '"') fail("expected an object key");
                stack_.back().key_start = pos_;
                begin_string(true);
                return;
            case Expect::CommaOrClose:
                if (c == ',') {
                    stack_.back().comma_pos = pos_;
                    expect_ = stack_.back().object ? Expect::Key : Expect::Value;
                    return;
                }
                if (c == '}' || c == ']') return close(c);
                fail("expected ',' or a closing bracket");
            case Expect::FirstValueOrClose:
                if (c == ']') return close(']');
                [[fallthrough]];
            case Expect::Value:
                return begin_value(c);
        }
    }

    void close(char c) {
        if (stack_.empty() || stack_.back().object != (c == '}')) fail("mismatched closing bracket");
        stack_.pop_back();
        value_done();
    }

    void begin_value(char c) {
        if (c == '{' || c == '[') {
            stack_.push_back(Frame{c == '{'});
            expect_ = c == '{' ? Expect::FirstKeyOrClose : Expect::FirstValueOrClose;
            return;
        }
        if (c == '"') return begin_string(false);
        if (c == '-' || text::is_digit(c)) {
            token_ = Token::Number;
            token_start_ = pos_;
            num_phase_ = c == '-' ? NumPhase::Sign : (c == '0' ? NumPhase::Zero : NumPhase::Int);
            return;
        }
        if (c == 't' || c == 'f' || c == 'n') {
            token_ = Token::Literal;
            literal_ = c == 't' ? "true" : (c == 'f' ? "false" : "null");
            literal_matched_ = 1;
            return;
        }
        fail("expected a value");
    }

    // -- strings --------------------------------------------------------------

    void begin_string(bool is_key) {
        token_ = Token::String;
        string_is_key_ = is_key;
        str_phase_ = StrPhase::Normal;
        high_surrogate_start_ = npos;
        token_start_ = pos_;
    }

    void string_char(char c) {
        const auto u = static_cast<unsigned char>(c);
        switch (str_phase_) {
            case StrPhase::Normal:
                if (c == '"') {
                    token_ = Token::None;
                    if (string_is_key_) expect_ = Expect::Colon;
                    else value_done();
                    return;
                }
                if (c == '\\') {
                    escape_start_ = pos_;
                    str_phase_ = StrPhase::Escape;
                    return;
                }
                if (u < 0x20) fail("control character in string");
                if (u >= 0x80) return begin_utf8(u);
                return;
            case StrPhase::Escape:
                if (c == 'u') {
                    str_phase_ = StrPhase::Unicode;
                    hex_read_ = 0;
                    code_unit_ = 0;
                    return;
                }
                if (c == '"' || c == '\\' || c == '/' || c == 'b' || c == 'f' || c == 'n' || c == 'r' || c == 't') {
                    str_phase_ = StrPhase::Normal;
                    return;
                }
                fail("invalid escape sequence");
            case StrPhase::Unicode:
                if (!is_hex(c)) fail("invalid \\u escape");
                code_unit_ = code_unit_ * 16 + hex_value(c);
                if (++hex_read_ < 4) return;
                if (high_surrogate_start_ != npos) {
                    if (code_unit_ < 0xDC00 || code_unit_ > 0xDFFF) fail("high surrogate not followed by a low surrogate");
                    high_surrogate_start_ = npos;
                    str_phase_ = StrPhase::Normal;
                } else if (code_unit_ >= 0xD800 && code_unit_ <= 0xDBFF) {
                    high_surrogate_start_ = escape_start_;
                    str_phase_ = StrPhase::AwaitLowBackslash;
                } else if (code_unit_ >= 0xDC00 && code_unit_ <= 0xDFFF) {
                    fail("unpaired low surrogate");
                } else {
                    str_phase_ = StrPhase::Normal;
                }
                return;
            case StrPhase::AwaitLowBackslash:
                if (c != '\\') fail("high surrogate not followed by a low surrogate");
                escape_start_ = pos_;
                str_phase_ = StrPhase::AwaitLowU;
                return;
            case StrPhase::AwaitLowU:
                if (c != 'u') fail("high surrogate not followed by a low surrogate");
                str_phase_ = StrPhase::Unicode;
                hex_read_ = 0;
                code_unit_ = 0;
                return;
            case StrPhase::Utf8:
                if (u < utf8_lo_ || u > utf8_hi_) fail("invalid UTF-8 continuation byte");
                utf8_lo_ = 0x80;
                utf8_hi_ = 0xBF;
                if (--utf8_remaining_ == 0) str_phase_ = StrPhase::Normal;
                return;
        }
    }

    void begin_utf8(unsigned char lead) {
        utf8_start_ = pos_;
        utf8_lo_ = 0x80;
        utf8_hi_ = 0xBF;
        if (lead >= 0xC2 && lead <= 0xDF) {
            utf8_remaining_ = 1;
        } else if (lead >= 0xE0 && lead <= 0xEF) {
            utf8_remaining_ = 2;
            if (lead == 0xE0) utf8_lo_ = 0xA0;
            if (lead == 0xED) utf8_hi_ = 0x9F;
        } else if (lead >= 0xF0 && lead <= 0xF4) {
            utf8_remaining_ = 3;
            if (lead == 0xF0) utf8_lo_ = 0x90;
            if (lead == 0xF4) utf8_hi_ = 0x8F;
        } else {
            fail("invalid UTF-8 lead byte");
        }
        str_phase_ = StrPhase::Utf8;
    }

    // -- numbers and literals -------------------------------------------------

    /// Returns false when `c` ends the number (and is not consumed).
    bool number_char(char c) {
        const bool digit = text::is_digit(c);
        switch (num_phase_) {
            case NumPhase::Sign:
                if (!digit) fail("expected a digit after '-'");
                num_phase_ = c == '0' ? NumPhase::Zero : NumPhase::Int;
                return true;
            case NumPhase::Zero:
                if (digit) fail("leading zero in number");
                [[fallthrough]];
            case NumPhase::Int:
                if (digit) return true;
                if (c == '.') {
                    mark_ = pos_;
                    num_phase_ = NumPhase::Dot;
                    return true;
                }
                [[fallthrough]];
            case NumPhase::Frac:
                if (digit) return true;
                if (c == 'e' || c == 'E') {
                    mark_ = pos_;
                    num_phase_ = NumPhase::Exp;
                    return true;
                }
                break;
            case NumPhase::Dot:
                if (!digit) fail("expected a digit after '.'");
                num_phase_ = NumPhase::Frac;
                return true;
            case NumPhase::Exp:
                if (c == '+' || c == '-') {
                    num_phase_ = NumPhase::ExpSign;
                    return true;
                }
                [[fallthrough]];
            case NumPhase::ExpSign:
                if (!digit) fail("expected an exponent digit");
                num_phase_ = NumPhase::ExpDigits;
                return true;
            case NumPhase::ExpDigits:
                if (digit) return true;
                break;
        }
        token_ = Token::None;
        value_done();
        return false;
    }

    void literal_char(char c) {
        if (c != literal_[literal_matched_]) fail("invalid literal");
        if (++literal_matched_ == literal_.size()) {
            token_ = Token::None;
            value_done();
        }
    }

    // -- completion -----------------------------------------------------------

    void cut_to(std::size_t p) {
        if (p < cut_) cut_ = p;
    }

    void trim_cut() {
        while (cut_ > 0 && text::is_space(in_[cut_ - 1])) --cut_;
    }

    /// Drops the current member's key, and its introducing comma if any.
    void drop_key() {
        Frame& f = stack_.back();
        cut_to(f.key_start);
        if (f.comma_pos != npos) cut_to(f.comma_pos);
    }

    std::string finish() {
        cut_ = in_.size();
        std::string suffix;

        switch (token_) {
            case Token::String:
                if (string_is_key_) {
                    drop_key();
                    return close_all(suffix);
                }
                if (high_surrogate_start_ != npos) cut_to(high_surrogate_start_);
                else if (str_phase_ == StrPhase::Escape || str_phase_ == StrPhase::Unicode) cut_to(escape_start_);
                else if (str_phase_ == StrPhase::Utf8) cut_to(utf8_start_);
                suffix = "\"";
                value_done();
                break;
            case Token::Literal:
                suffix = std::string(literal_.substr(literal_matched_));
                value_done();
                break;
            case Token::Number:
                if (num_phase_ == NumPhase::Sign) {
                    cut_to(token_start_);
                    break;  // no value started: fall through to the expect-based rules
                }
                if (num_phase_ == NumPhase::Dot || num_phase_ == NumPhase::Exp || num_phase_ == NumPhase::ExpSign)
                    cut_to(mark_);
                value_done();
                break;
            case Token::None: break;
        }

        if (token_ == Token::None || (token_ == Token::Number && num_phase_ == NumPhase::Sign)) {
            switch (expect_) {
                case Expect::Value:
                    if (stack_.empty()) return "null";
                    if (stack_.back().object) {
                        trim_cut();
                        suffix = " null";
                    } else {
                        cut_to(stack_.back().comma_pos);
                    }
                    break;
                case Expect::Key:
                    cut_to(stack_.back().comma_pos);
                    break;
                case Expect::Colon:
                    drop_key();
                    break;
                default: break;
            }
        }
        return close_all(suffix);
    }

    std::string close_all(const std::string& suffix) {
        std::string out(in_.substr(0, cut_));
        out += suffix;
        for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) out.push_back(it->object ? '}' : ']');
        return out;
    }

    std::string_view in_;
    std::size_t pos_ = 0;
    std::size_t cut_ = 0;
    std::vector<Frame> stack_;
    Expect expect_ = Expect::Value;

    Token token_ = Token::None;
    std::size_t token_start_ = 0;
    std::size_t mark_ = 0;
    NumPhase num_phase_ = NumPhase::Int;
    std::string_view literal_;
    std::size_t literal_matched_ = 0;

    bool string_is_key_ = false;
    StrPhase str_phase_ = StrPhase::Normal;
    std::size_t escape_start_ = 0;
    std::size_t high_surrogate_start_ = npos;
    unsigned hex_read_ = 0;
    unsigned code_unit_ = 0;
    std::size_t utf8_start_ = 0;
    unsigned utf8_remaining_ = 0;
    unsigned utf8_lo_ = 0x80;
    unsigned utf8_hi_ = 0xBF;
};

}  // namespace

std::string repair_json(std::string_view partial) { return Repairer(partial).run(); }

}  // namespace drugwatch
