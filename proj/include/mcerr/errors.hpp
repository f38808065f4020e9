#pragma once

#include <stdexcept>
#include <string>

namespace mcerr {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inputs violate a documented precondition.
struct DomainError : Error {
    using Error::Error;
};

// Transition matrix is not irreducible.
struct ReducibleChain : Error {
    using Error::Error;
};

// Eigensolver residual exceeded tolerance.
struct NumericalFailure : Error {
    using Error::Error;
};

// beta (or the relevant rate) is too close to 1 for the formula to be usable.
struct GapExhausted : Error {
    using Error::Error;
};

// Exhaustive enumeration refused; supply a candidate list instead.
struct TooLarge : Error {
    using Error::Error;
};

// Requested state space exceeds the configured cap.
struct SizeOverflow : Error {
    using Error::Error;
};

// Chord bracketing collapsed below eps0.
struct DegenerateChord : Error {
    using Error::Error;
};

// Grid refinement did not stabilize.
struct NonConvergent : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct SchemaError : Error {
    using Error::Error;
};

}  // namespace mcerr
