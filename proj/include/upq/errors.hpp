#pragma once

// Error taxonomy for the upq library.
//
// Every failure the library raises deliberately derives from upq::Error, so
// callers can catch one type at an API boundary.  The split below mirrors how
// callers are expected to react:
//
//   * input-shape problems   (LengthMismatch, SignatureMismatch, NotDescending,
//     NonRegular, LatticeViolation, EmptyWindow, RankTooSmall, ConfigInvalid)
//     mean the request itself was malformed — fix the arguments;
//   * numeric problems       (FormViolation, EigensolverFailure) mean a matrix
//     computation left its validated regime — the data, not the call, is bad.

#include <stdexcept>
#include <string>

namespace upq {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Sizes of paired containers disagree, or a container that must be non-empty
// is empty.
struct LengthMismatch : Error {
    using Error::Error;
};

// A signed spectrum (or matrix form) does not carry the signature an
// operation requires, e.g. a projection target whose signature is not
// (p, q-1) relative to the ambient (p, q).
struct SignatureMismatch : Error {
    using Error::Error;
};

// A sequence that must be weakly descending is not.
struct NotDescending : Error {
    using Error::Error;
};

// A spectrum that must be regular (strictly descending values, with gaps
// above the caller's tolerance) has a tie or near-tie.
struct NonRegular : Error {
    using Error::Error;
};

// A value that must lie on a prescribed lattice (integers, or half-integers
// with odd numerator) does not, or the value list has the wrong parity for
// its rank.
struct LatticeViolation : Error {
    using Error::Error;
};

// A search window contains no lattice point, or is otherwise degenerate.
struct EmptyWindow : Error {
    using Error::Error;
};

// An operation needs at least a 2x2 matrix (or a rank-2 group) and got less.
struct RankTooSmall : Error {
    using Error::Error;
};

// A search/experiment configuration has a non-positive budget or tolerance.
struct ConfigInvalid : Error {
    using Error::Error;
};

// A matrix claimed to preserve (or infinitesimally preserve) the indefinite
// form fails the structural residual check.
struct FormViolation : Error {
    using Error::Error;
};

// The eigensolver did not converge or returned non-finite values.
struct EigensolverFailure : Error {
    using Error::Error;
};

}  // namespace upq
