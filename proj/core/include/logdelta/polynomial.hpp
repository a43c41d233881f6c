#pragma once

#include <string>
#include <utility>
#include <vector>

#include "logdelta/scalar.hpp"

namespace logdelta {

// Univariate polynomial, coefficients lowest degree first. The zero
// polynomial is the empty coefficient list; otherwise the leading
// coefficient is nonzero.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Scalar> coeffs);
    static Polynomial constant(const Scalar& c);
    static Polynomial linear(const Scalar& c0, const Scalar& c1) {
        return Polynomial({c0, c1});
    }

    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is -1 by convention.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Scalar>& coeffs() const { return c_; }
    Scalar coeff(int k) const;

    Scalar operator()(const Scalar& x) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator*=(const Scalar& s);
    friend Polynomial operator*(Polynomial p, const Scalar& s) { return p *= s; }

    Polynomial derivative() const;
    Polynomial antiderivative() const;  // constant term 0
    Scalar integral(const Scalar& lo, const Scalar& hi) const;

    std::string str(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Scalar> c_;
};

// The unique root of a degree <= 2 polynomial in the closed interval.
// Rational when the discriminant is a perfect square, radical otherwise.
// Throws not_found_error when no root lies in the interval and
// ambiguity_error when two distinct roots do. Requires rational coefficients.
Scalar quadratic_root_in(const Polynomial& q, const Scalar& lo, const Scalar& hi);

/*
 * Piecewise polynomial of degree <= 2 on [breakpoints.front(),
 * breakpoints.back()], breakpoints strictly increasing. Jump discontinuities
 * are representable (step functions integrate fine); families produced by
 * the decomposition engine are continuous and that is checked there.
 * At a shared breakpoint evaluation uses the right-hand piece.
 */
class PiecewiseQuadratic {
public:
    PiecewiseQuadratic(std::vector<Scalar> breakpoints, std::vector<Polynomial> pieces);

    bool is_continuous() const;

    std::size_t piece_count() const { return pieces_.size(); }
    const std::vector<Scalar>& breakpoints() const { return breaks_; }
    const Polynomial& piece(std::size_t i) const { return pieces_.at(i); }
    const Scalar& domain_lo() const { return breaks_.front(); }
    const Scalar& domain_hi() const { return breaks_.back(); }

    Scalar operator()(const Scalar& x) const;

    // Exact definite integral over [lo, hi]; domain_error outside the domain.
    Scalar integral(const Scalar& lo, const Scalar& hi) const;

    // One-sided derivative at x taken from the piece containing x on the
    // right (left at the upper endpoint).
    Scalar derivative_at(const Scalar& x) const;

    // JSON array of {lo, hi, coeffs}; see also from_json.
    std::string to_json() const;
    static PiecewiseQuadratic from_json(const std::string& text);

    // CSV rows "lo,hi,c0,c1,c2" with exact string entries.
    std::string to_csv() const;

private:
    std::size_t piece_index(const Scalar& x) const;
    std::vector<Scalar> breaks_;
    std::vector<Polynomial> pieces_;
};

// Definite integral of f over [lo, hi].
Scalar integrate_piecewise(const PiecewiseQuadratic& f, const Scalar& lo, const Scalar& hi);

/*
 * Polynomial identity testing for a claimed rational function num/den of
 * numerator and denominator degree <= degree_bound. Agreement at
 * 2*degree_bound + 2 pairwise-distinct sample points certifies equality of
 * rational functions, so the return value is a proof, not a heuristic.
 * Throws precondition_error when the samples are too few, repeat an input,
 * or hit a zero of the claimed denominator.
 */
bool verify_identity(const std::vector<std::pair<Scalar, Scalar>>& samples,
                     const Polynomial& claimed_num, const Polynomial& claimed_den,
                     int degree_bound);

}  // namespace logdelta
