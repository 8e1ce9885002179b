#pragma once

#include <stdexcept>
#include <string>

namespace stc {

// Thrown for malformed input text (circuit files, pauli strings, fault strings).
struct ParseError : std::runtime_error {
    size_t line;
    ParseError(size_t line_no, const std::string &msg)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
    explicit ParseError(const std::string &msg) : std::runtime_error(msg), line(0) {}
};

// Thrown when a structurally well-formed object violates a semantic rule
// (overlapping supports, non-Clifford tableau images, affine outcome code, ...).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown on size mismatches between operands (qubit counts, depths, lengths).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a configurable enumeration budget would be exceeded.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an internal invariant that should be unreachable is violated.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace stc
