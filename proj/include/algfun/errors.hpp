#pragma once

#include <stdexcept>
#include <string>

namespace algfun {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operands live in different rings.
struct RingMismatchError : Error {
    using Error::Error;
};

// invert_unit applied to a non-unit; message carries the obstruction.
struct NotAUnitError : Error {
    using Error::Error;
};

// sl2_inverse of a matrix whose determinant is not 1.
struct NotSpecialError : Error {
    using Error::Error;
};

// A stated operation precondition fails (caller error).
struct PreconditionError : Error {
    using Error::Error;
};

// A construction produced output that fails its own verifier. Indicates
// either a bug or caller data violating the hypotheses of the construction.
struct InternalInconsistencyError : Error {
    using Error::Error;
};

// expr parser: lexical or syntax error with 1-based position.
struct ParseError : Error {
    int line;
    int col;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg + " (line " + std::to_string(line_) + ", col " + std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};

// Numeric oracle: an angle increment at the given resolution is too large
// to disambiguate; caller should retry with more samples.
struct RefineNeeded : Error {
    using Error::Error;
};

} // namespace algfun
