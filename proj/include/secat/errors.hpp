#pragma once

#include <stdexcept>
#include <string>

namespace secat {

// Base for all toolkit errors. The CLI maps subclasses to exit codes:
// ParseError -> 1, ValidationError -> 2, PreconditionError -> 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Syntax error in a model file. Carries a 1-based source position.
struct ParseError : Error {
    int line;
    int col;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg), line(line_), col(col_) {}
};

// A structurally invalid object: d^2 != 0, degree mismatch, relation not
// respected, mismatched parent algebras, dimension mismatch.
struct ValidationError : Error {
    using Error::Error;
};

// A well-formed request the tool refuses: non-surjective morphism where a
// quotient is needed, Poincare duality not established, n < 2 for tc.
struct PreconditionError : Error {
    using Error::Error;
};

} // namespace secat
