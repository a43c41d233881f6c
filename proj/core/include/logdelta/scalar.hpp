#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

#include "logdelta/errors.hpp"

namespace logdelta {

using Int = mpz_class;
using Rat = mpq_class;

// Canonical rational from a numerator/denominator pair.
Rat make_rat(long num, long den = 1);
Rat make_rat(const Int& num, const Int& den);

// Parses "p/q" or "p". Throws domain_error on malformed input or q == 0.
Rat parse_rat(const std::string& text);

// "p/q", or just "p" when the denominator is 1.
std::string rat_str(const Rat& value);

int sign_of(const Rat& value);

/*
 * Exact scalar: either a rational p, or p + q*sqrt(d) with p, q rational and
 * d a positive square-free integer. Invariants kept by every operation:
 *
 *   - q == 0  implies  d == 0 (the value is stored as a plain rational),
 *   - d is square-free and > 1 whenever q != 0,
 *   - arithmetic between two radicals with different d throws domain_error
 *     (no implicit embedding into a larger field).
 *
 * Radicals only ever arise as roots of quadratics whose discriminant is not
 * a perfect square; everywhere else the rational fast path applies.
 */
class Scalar {
public:
    Scalar() : p_(0), q_(0), d_(0) {}
    Scalar(long value) : p_(value), q_(0), d_(0) {}        // NOLINT(google-explicit-constructor)
    Scalar(const Rat& value) : p_(value), q_(0), d_(0) {}  // NOLINT(google-explicit-constructor)
    Scalar(Rat p, Rat q, unsigned long d);

    // sqrt of a nonnegative rational, as a rational when possible and as a
    // radical Scalar otherwise. Throws domain_error for negative input.
    static Scalar sqrt_of(const Rat& value);

    bool is_rational() const { return d_ == 0; }
    bool is_zero() const { return d_ == 0 && p_ == 0; }

    // The rational value; throws domain_error when the scalar is a radical.
    const Rat& rat() const;

    const Rat& radical_p() const { return p_; }
    const Rat& radical_q() const { return q_; }
    unsigned long radicand() const { return d_; }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);

    friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
    friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
    friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
    friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

    // -1, 0, +1. Exact: radical signs are decided by comparing p^2 and q^2 d.
    int sign() const;

    // Total order, exact. Values in the same extension compare through the
    // sign of the difference; values in different extensions are separated
    // by rational interval refinement (they can never be equal: sqrt(d) does
    // not lie in Q(sqrt(d')) for distinct square-free d, d').
    static int compare(const Scalar& a, const Scalar& b);

    friend bool operator==(const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return compare(a, b) != 0; }
    friend bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return compare(a, b) <= 0; }
    friend bool operator>(const Scalar& a, const Scalar& b) { return compare(a, b) > 0; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return compare(a, b) >= 0; }

    // "p/q" for rationals, "p/q + r/s*sqrt(d)" for radicals.
    std::string str() const;
    double approx() const;

    static Scalar parse(const std::string& text) { return Scalar(parse_rat(text)); }

private:
    void normalize();

    Rat p_;
    Rat q_;
    unsigned long d_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& value);

}  // namespace logdelta
