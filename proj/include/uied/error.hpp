#pragma once

#include <stdexcept>
#include <string>

namespace uied {

// Base class for all library errors. Anything derived from it maps to
// "bad input" (exit code 2) at the CLI boundary; other exceptions are
// treated as internal errors (exit code 1).
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid dimensions or out-of-range coordinates.
struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

// Malformed file content; carries a 1-based line number when known.
struct ParseError : Error {
    ParseError(const std::string& msg, int line_no = 0)
        : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
    int line = 0;
};

// External classifier spoke out of contract (bad framing, unknown label,
// confidence out of range, transport failure).
struct ProtocolError : Error {
    explicit ProtocolError(const std::string& msg) : Error(msg) {}
};

// Synthetic generation could not satisfy the requested spec.
struct GenerationError : Error {
    explicit GenerationError(const std::string& msg) : Error(msg) {}
};

}  // namespace uied
