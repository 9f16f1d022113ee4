#pragma once

#include <stdexcept>
#include <string>

namespace bkb {

// Malformed input text (JSON syntax, structure file records).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Well-formed input that violates a diagram or structure invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal identity failed; indicates a bug rather than bad input.
struct InternalConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Projection could not be made generic within the retry budget.
struct GenericityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A move was requested at a site that does not match its local pattern.
struct MoveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bkb
