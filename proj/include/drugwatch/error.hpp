#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace drugwatch {

/// Base for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input; carries the byte offset of the first offending character.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Well-formed input with the wrong shape (missing field, wrong type, closed-registry violation).
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Domain invariant violated by otherwise parseable data.
class InvariantError : public Error {
public:
    using Error::Error;
};

}  // namespace drugwatch
