#pragma once

#include <stdexcept>
#include <string>

namespace vcsat {

// Arguments violate an operation's input contract (wrong range, wrong ground set).
class InvalidInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The request is well-formed but exceeds the scale this implementation
// enumerates exhaustively.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A data-level precondition fails: the inputs are in range, but the family
// does not have the structural property the operation requires (e.g. the
// element to duplicate is unsafe).  Carries a witness in the message.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A certified numeric bracket straddles zero: no sign can honestly be
// reported.  Callers distinguish this from a definite negative result.
class IndeterminateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Internal re-verification failed.  Indicates a bug in this library, never
// an input problem; should be impossible to trigger.
class InternalConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace vcsat
