#include "logdelta/scalar.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>

namespace logdelta {

Rat make_rat(long num, long den) {
    if (den == 0) throw domain_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw domain_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat parse_rat(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(Int(text));
        }
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        return make_rat(num, den);
    } catch (const std::invalid_argument&) {
        throw domain_error("malformed rational \"" + text + "\" (expected p or p/q)");
    }
}

std::string rat_str(const Rat& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

int sign_of(const Rat& value) { return sgn(value); }

namespace {

// Splits n > 0 as s^2 * d with d square-free, by trial division followed by
// a perfect-square check on the cofactor. The cofactor is certified
// square-free only below kResidualLimit; engine-produced radicands are tiny,
// so exceeding the limit means something upstream went wrong.
constexpr unsigned long kTrialLimit = 100000;
const Int kResidualLimit = Int(10000000000L);  // 1e10 = kTrialLimit^2

void split_square_free(const Int& n, Int& square_root, Int& square_free) {
    Int rest = n;
    square_root = 1;
    square_free = 1;
    for (unsigned long p = 2; p <= kTrialLimit; p = (p == 2 ? 3 : p + 2)) {
        if (rest < Int(p) * p) break;
        unsigned long e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        }
        for (unsigned long i = 0; i + 1 < e; i += 2) square_root *= p;
        if (e % 2 == 1) square_free *= p;
    }
    if (rest > 1) {
        if (mpz_perfect_square_p(rest.get_mpz_t())) {
            Int root;
            mpz_sqrt(root.get_mpz_t(), rest.get_mpz_t());
            square_root *= root;
        } else if (rest < kResidualLimit) {
            square_free *= rest;  // square-free: any square factor would have a prime <= kTrialLimit
        } else {
            throw internal_error("radicand too large to certify square-free: " + n.get_str());
        }
    }
}

}  // namespace

Scalar::Scalar(Rat p, Rat q, unsigned long d) : p_(std::move(p)), q_(std::move(q)), d_(d) {
    if (q_ != 0) {
        if (d_ < 2) throw domain_error("radical scalar needs square-free d >= 2");
        Int s, sf;
        split_square_free(Int(d_), s, sf);
        if (s != 1) throw domain_error("radicand is not square-free");
    }
    normalize();
}

void Scalar::normalize() {
    if (q_ == 0) d_ = 0;
}

Scalar Scalar::sqrt_of(const Rat& value) {
    const int s = sgn(value);
    if (s < 0) throw domain_error("sqrt of a negative rational");
    if (s == 0) return Scalar(0);
    // sqrt(a/b) = sqrt(a*b)/b
    Int radicand = value.get_num() * value.get_den();
    Int root, square_free;
    split_square_free(radicand, root, square_free);
    Rat scale = make_rat(root, value.get_den());
    if (square_free == 1) return Scalar(scale);
    if (!square_free.fits_ulong_p())
        throw internal_error("square-free radicand exceeds machine range");
    return Scalar(Rat(0), scale, square_free.get_ui());
}

const Rat& Scalar::rat() const {
    if (!is_rational()) throw domain_error("radical scalar used where a rational is required");
    return p_;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.p_ = -r.p_;
    r.q_ = -r.q_;
    return r;
}

namespace {

unsigned long merged_radicand(const Scalar& a, const Scalar& b, const char* op) {
    const bool ar = a.is_rational(), br = b.is_rational();
    if (ar && br) return 0;
    if (ar) return b.radicand();
    if (br) return a.radicand();
    if (a.radicand() != b.radicand())
        throw domain_error(std::string("mixed quadratic extensions in ") + op);
    return a.radicand();
}

}  // namespace

Scalar& Scalar::operator+=(const Scalar& rhs) {
    d_ = merged_radicand(*this, rhs, "+");
    p_ += rhs.p_;
    q_ += rhs.q_;
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
    d_ = merged_radicand(*this, rhs, "-");
    p_ -= rhs.p_;
    q_ -= rhs.q_;
    normalize();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
    const unsigned long d = merged_radicand(*this, rhs, "*");
    Rat p = p_ * rhs.p_ + q_ * rhs.q_ * Rat(static_cast<long>(d));
    Rat q = p_ * rhs.q_ + q_ * rhs.p_;
    p_ = std::move(p);
    q_ = std::move(q);
    d_ = d;
    normalize();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
    if (rhs.sign() == 0) throw domain_error("division by zero scalar");
    if (rhs.is_rational()) {
        p_ /= rhs.p_;
        q_ /= rhs.p_;
        normalize();
        return *this;
    }
    // 1/(p + q*sqrt(d)) = (p - q*sqrt(d)) / (p^2 - q^2 d)
    const unsigned long d = rhs.d_;
    Rat norm = rhs.p_ * rhs.p_ - rhs.q_ * rhs.q_ * Rat(static_cast<long>(d));
    if (norm == 0) throw internal_error("radical with vanishing field norm");
    Scalar conj(rhs.p_ / norm, -rhs.q_ / norm, d);
    return *this *= conj;
}

namespace {

// Rational bracket [lo, hi] of p + q sqrt(d) with hi - lo <= |q| 2^-k.
void radical_bounds(const Rat& p, const Rat& q, unsigned long d, unsigned k, Rat& lo, Rat& hi) {
    Int scaled = Int(d);
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * k);
    Int root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    Int two_k(1);
    mpz_mul_2exp(two_k.get_mpz_t(), two_k.get_mpz_t(), k);
    const Rat sqrt_lo = make_rat(root, two_k);
    const Rat sqrt_hi = make_rat(root + 1, two_k);
    if (sgn(q) >= 0) {
        lo = p + q * sqrt_lo;
        hi = p + q * sqrt_hi;
    } else {
        lo = p + q * sqrt_hi;
        hi = p + q * sqrt_lo;
    }
}

}  // namespace

int Scalar::compare(const Scalar& a, const Scalar& b) {
    if (a.is_rational() || b.is_rational() || a.d_ == b.d_) return (a - b).sign();
    for (unsigned k = 16; k <= 256; k *= 2) {
        Rat a_lo, a_hi, b_lo, b_hi;
        radical_bounds(a.p_, a.q_, a.d_, k, a_lo, a_hi);
        radical_bounds(b.p_, b.q_, b.d_, k, b_lo, b_hi);
        if (a_hi < b_lo) return -1;
        if (b_hi < a_lo) return 1;
    }
    throw internal_error("failed to separate values from distinct quadratic extensions");
}

int Scalar::sign() const {
    if (q_ == 0) return sgn(p_);
    if (p_ == 0) return sgn(q_);
    const int sp = sgn(p_), sq = sgn(q_);
    if (sp == sq) return sp;
    // Opposite signs: compare |p| with |q| sqrt(d) via squares.
    Rat lhs = p_ * p_;
    Rat rhs = q_ * q_ * Rat(static_cast<long>(d_));
    const int c = cmp(lhs, rhs);
    if (c == 0) return 0;
    return c > 0 ? sp : sq;
}

std::string Scalar::str() const {
    if (is_rational()) return rat_str(p_);
    std::ostringstream os;
    os << rat_str(p_) << (sgn(q_) < 0 ? " - " : " + ") << rat_str(abs(q_)) << "*sqrt(" << d_ << ")";
    return os.str();
}

double Scalar::approx() const {
    double v = p_.get_d();
    if (d_ != 0) v += q_.get_d() * std::sqrt(static_cast<double>(d_));
    return v;
}

std::ostream& operator<<(std::ostream& os, const Scalar& value) { return os << value.str(); }

}  // namespace logdelta
