#pragma once

#include <stdexcept>
#include <string>

namespace logdelta {

// Base class for everything this library throws on bad input or a broken
// internal invariant. The CLI maps any logdelta::error to exit code 1.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// A stated precondition of an operation is violated by the caller.
struct precondition_error : error {
    using error::error;
};

// Value-level misuse: mixed quadratic extensions, radical where a rational
// is required, interval outside a function's domain.
struct domain_error : error {
    using error::error;
};

// Vector/matrix rank mismatch between a divisor class and its lattice.
struct dimension_error : error {
    using error::error;
};

// Root finding: no root in the requested interval.
struct not_found_error : error {
    using error::error;
};

// Root finding: two distinct roots in the requested interval.
struct ambiguity_error : error {
    using error::error;
};

// The input class is not pseudo-effective relative to the curve universe.
struct not_pseudo_effective_error : error {
    using error::error;
};

// A polytope or region degenerated to something lower-dimensional.
struct degenerate_error : error {
    using error::error;
};

// A scan or chamber walk exceeded its structural bound without terminating.
struct cap_exceeded_error : error {
    using error::error;
};

// An internal consistency check failed. Always a bug, never user error.
struct internal_error : error {
    using error::error;
};

}  // namespace logdelta
