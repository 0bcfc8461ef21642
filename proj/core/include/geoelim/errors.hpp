#pragma once

#include <stdexcept>
#include <string>

namespace geoelim {

/// Base class for all engine errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mismatched variable counts, malformed operands and similar caller bugs.
struct StructuralError : Error {
    using Error::Error;
};

/// Input outside an operation's domain (zero polynomial where nonzero required, ...).
struct DomainError : Error {
    using Error::Error;
};

/// A configurable computation budget was exceeded.
struct ResourceError : Error {
    ResourceError(const std::string& what, std::size_t spairs, std::size_t reductions)
        : Error(what), spairs(spairs), reductions(reductions) {}
    std::size_t spairs = 0;
    std::size_t reductions = 0;
};

/// Script-level problem, annotated with a source position (1-based).
struct ParseError : Error {
    ParseError(const std::string& what, int line, int column)
        : Error(what), line(line), column(column) {}
    int line = 0;
    int column = 0;
};

/// A construction cannot be turned into a polynomial model.
struct CompileError : Error {
    using Error::Error;
};

/// Numeric forward evaluation hit a degenerate configuration.
struct DegeneracyError : Error {
    using Error::Error;
};

/// Query-level failure ("not a constant relation", ...).
struct QueryError : Error {
    using Error::Error;
};

/// Missing or corrupt corpus / expected-answer files.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace geoelim
