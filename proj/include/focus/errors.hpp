#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace focus {

/// Malformed text input. line is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Data that parses but breaks a model invariant.
class ValidationError : public ParseError {
public:
    using ParseError::ParseError;
};

/// An enumeration or step budget ran out. Never a silent truncation.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input does not satisfy the hypotheses an operation checks before running.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace focus
