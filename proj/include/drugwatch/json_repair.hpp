#pragma once

#include <string>
#include <string_view>

namespace drugwatch {

/// Completes a truncated JSON document.
///
/// The input must be a prefix of some valid JSON text (surrounding whitespace allowed).
/// Completion rules, applied at the truncation point:
///   - inside a value string: drop any partial escape or partial UTF-8 sequence, close the quote
///   - inside or right after an object key (no colon yet): drop the key
///   - after a colon: append `null`
///   - after a comma: drop the comma
///   - partial literal (`t`, `fals`, `nu`...): complete it
///   - partial number: drop a dangling '.', exponent marker or sign; a lone '-' is dropped
///     as if no value had started
///   - close every open container, innermost first
/// Empty or whitespace-only input yields `null`. Input that is already complete is returned
/// unchanged. Throws ParseError at the first byte that cannot continue any valid document.
[[nodiscard]] std::string repair_json(std::string_view partial);

}  // namespace drugwatch
