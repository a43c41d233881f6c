#include "logdelta/polynomial.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace logdelta {

using nlohmann::json;

Polynomial::Polynomial(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const Scalar& c) { return Polynomial({c}); }

void Polynomial::trim() {
    while (!c_.empty() && c_.back().sign() == 0) c_.pop_back();
}

Scalar Polynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Scalar(0);
    return c_[static_cast<std::size_t>(k)];
}

Scalar Polynomial::operator()(const Scalar& x) const {
    Scalar acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), Scalar(0));
    for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] += rhs.c_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), Scalar(0));
    for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] -= rhs.c_[i];
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
}

Polynomial& Polynomial::operator*=(const Scalar& s) {
    for (auto& c : c_) c *= s;
    trim();
    return *this;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<Scalar> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Scalar(static_cast<long>(i));
    return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
    if (is_zero()) return Polynomial();
    std::vector<Scalar> a(c_.size() + 1, Scalar(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        a[i + 1] = c_[i] / Scalar(static_cast<long>(i + 1));
    return Polynomial(std::move(a));
}

Scalar Polynomial::integral(const Scalar& lo, const Scalar& hi) const {
    const Polynomial F = antiderivative();
    return F(hi) - F(lo);
}

std::string Polynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].sign() == 0) continue;
        if (!first) os << " + ";
        os << "(" << c_[i].str() << ")";
        if (i == 1) os << "*" << var;
        if (i > 1) os << "*" << var << "^" << i;
        first = false;
    }
    return os.str();
}

Scalar quadratic_root_in(const Polynomial& q, const Scalar& lo, const Scalar& hi) {
    if (q.degree() > 2) throw precondition_error("quadratic_root_in: degree > 2");
    if (lo > hi) throw precondition_error("quadratic_root_in: empty interval");
    for (const auto& c : q.coeffs())
        if (!c.is_rational())
            throw precondition_error("quadratic_root_in: radical coefficients unsupported");

    std::vector<Scalar> roots;
    const Scalar a = q.coeff(2), b = q.coeff(1), c0 = q.coeff(0);
    if (a.sign() == 0) {
        if (b.sign() == 0)
            throw not_found_error(q.is_zero() ? "quadratic_root_in: zero polynomial"
                                              : "quadratic_root_in: nonzero constant");
        roots.push_back(-c0 / b);
    } else {
        const Rat disc = (b * b - Scalar(4) * a * c0).rat();
        if (sign_of(disc) < 0) throw not_found_error("quadratic_root_in: negative discriminant");
        const Scalar sq = Scalar::sqrt_of(disc);
        const Scalar two_a = Scalar(2) * a;
        roots.push_back((-b - sq) / two_a);
        if (sq.sign() != 0) roots.push_back((-b + sq) / two_a);
    }

    std::vector<Scalar> in_range;
    for (const auto& r : roots)
        if (lo <= r && r <= hi) in_range.push_back(r);
    if (in_range.empty()) throw not_found_error("quadratic_root_in: no root in interval");
    if (in_range.size() == 2 && in_range[0] != in_range[1])
        throw ambiguity_error("quadratic_root_in: two distinct roots in interval");
    return in_range.front();
}

PiecewiseQuadratic::PiecewiseQuadratic(std::vector<Scalar> breakpoints,
                                       std::vector<Polynomial> pieces)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    if (pieces_.empty() || breaks_.size() != pieces_.size() + 1)
        throw precondition_error("piecewise: need n pieces and n+1 breakpoints");
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
        if (!(breaks_[i] < breaks_[i + 1]))
            throw precondition_error("piecewise: breakpoints not strictly increasing");
    for (const auto& p : pieces_)
        if (p.degree() > 2) throw precondition_error("piecewise: piece of degree > 2");
}

bool PiecewiseQuadratic::is_continuous() const {
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
        const Scalar& x = breaks_[i + 1];
        if (pieces_[i](x) != pieces_[i + 1](x)) return false;
    }
    return true;
}

std::size_t PiecewiseQuadratic::piece_index(const Scalar& x) const {
    if (x < breaks_.front() || x > breaks_.back())
        throw domain_error("piecewise: point outside domain");
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
        if (x < breaks_[i + 1]) return i;
    return pieces_.size() - 1;
}

Scalar PiecewiseQuadratic::operator()(const Scalar& x) const { return pieces_[piece_index(x)](x); }

Scalar PiecewiseQuadratic::integral(const Scalar& lo, const Scalar& hi) const {
    if (lo > hi) throw precondition_error("piecewise integral: lo > hi");
    if (lo < breaks_.front() || hi > breaks_.back())
        throw domain_error("piecewise integral: interval outside domain");
    Scalar total(0);
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const Scalar a = (lo > breaks_[i]) ? lo : breaks_[i];
        const Scalar b = (hi < breaks_[i + 1]) ? hi : breaks_[i + 1];
        if (a < b) total += pieces_[i].integral(a, b);
    }
    return total;
}

Scalar PiecewiseQuadratic::derivative_at(const Scalar& x) const {
    std::size_t i = piece_index(x);
    if (x == breaks_.back()) i = pieces_.size() - 1;
    return pieces_[i].derivative()(x);
}

std::string PiecewiseQuadratic::to_json() const {
    json arr = json::array();
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        json coeffs = json::array();
        for (int k = 0; k <= 2; ++k) coeffs.push_back(pieces_[i].coeff(k).str());
        arr.push_back({{"lo", breaks_[i].str()}, {"hi", breaks_[i + 1].str()}, {"coeffs", coeffs}});
    }
    return arr.dump();
}

PiecewiseQuadratic PiecewiseQuadratic::from_json(const std::string& text) {
    const json arr = json::parse(text);
    if (!arr.is_array() || arr.empty()) throw domain_error("piecewise json: expected nonempty array");
    std::vector<Scalar> breaks;
    std::vector<Polynomial> pieces;
    for (const auto& item : arr) {
        const Scalar lo = Scalar::parse(item.at("lo").get<std::string>());
        const Scalar hi = Scalar::parse(item.at("hi").get<std::string>());
        if (breaks.empty())
            breaks.push_back(lo);
        else if (breaks.back() != lo)
            throw domain_error("piecewise json: pieces are not contiguous");
        breaks.push_back(hi);
        std::vector<Scalar> c;
        for (const auto& entry : item.at("coeffs")) c.push_back(Scalar::parse(entry.get<std::string>()));
        pieces.emplace_back(std::move(c));
    }
    return PiecewiseQuadratic(std::move(breaks), std::move(pieces));
}

std::string PiecewiseQuadratic::to_csv() const {
    std::ostringstream os;
    os << "lo,hi,c0,c1,c2\n";
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        os << breaks_[i].str() << "," << breaks_[i + 1].str();
        for (int k = 0; k <= 2; ++k) os << "," << pieces_[i].coeff(k).str();
        os << "\n";
    }
    return os.str();
}

Scalar integrate_piecewise(const PiecewiseQuadratic& f, const Scalar& lo, const Scalar& hi) {
    return f.integral(lo, hi);
}

bool verify_identity(const std::vector<std::pair<Scalar, Scalar>>& samples,
                     const Polynomial& claimed_num, const Polynomial& claimed_den,
                     int degree_bound) {
    if (degree_bound < 0) throw precondition_error("verify_identity: negative degree bound");
    if (claimed_num.degree() > degree_bound || claimed_den.degree() > degree_bound)
        throw precondition_error("verify_identity: claimed function exceeds the degree bound");
    const std::size_t needed = 2 * static_cast<std::size_t>(degree_bound) + 2;
    if (samples.size() < needed)
        throw precondition_error("verify_identity: need at least " + std::to_string(needed) +
                                 " samples");
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = i + 1; j < samples.size(); ++j)
            if (samples[i].first == samples[j].first)
                throw precondition_error("verify_identity: repeated sample input");
    for (const auto& [x, value] : samples) {
        const Scalar den = claimed_den(x);
        if (den.sign() == 0)
            throw precondition_error("verify_identity: claimed denominator vanishes at a sample");
        if (claimed_num(x) != value * den) return false;
    }
    return true;
}

}  // namespace logdelta
