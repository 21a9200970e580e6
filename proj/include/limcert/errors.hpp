#pragma once

#include <stdexcept>
#include <string>

namespace limcert {

// Base class for all library errors so callers can catch the whole family.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed textual input (rationals, JSON payloads, family strings).
struct ParseError : Error {
    using Error::Error;
};

// System configuration rejected (non-monotone eta family, bad prime, ...).
struct InvalidConfigError : Error {
    using Error::Error;
};

// Operation preconditions not met by the caller-supplied parameters.
struct PreconditionViolatedError : Error {
    using Error::Error;
};

// A tail bound cannot certify that omitted coefficients stay above the
// truncated minimum; the caller must extend the truncation.
struct TailDominatesError : Error {
    using Error::Error;
};

// Ring operation requested on a series with a tail bound.
struct TailUnsupportedError : Error {
    using Error::Error;
};

// A level query or asymptotic decision needs data beyond what a table-backed
// exponent family provides.
struct HorizonExceededError : Error {
    using Error::Error;
};

// Annulus exhaustion rejected (non-monotone gaps, inner radius crossing the
// outer one).
struct InvalidExhaustionError : Error {
    using Error::Error;
};

// Membership decision requested on a Laurent series without tail envelopes.
struct MissingEnvelopeError : Error {
    using Error::Error;
};

}  // namespace limcert
