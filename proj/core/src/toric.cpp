#include "logdelta/toric.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>

namespace logdelta {

using nlohmann::json;

namespace {

long det2(const LatticeVector& u, const LatticeVector& v) { return u[0] * v[1] - u[1] * v[0]; }

}  // namespace

void Fan::validate() const {
    if (rays.size() < 3) throw precondition_error("fan needs at least three rays");
    for (const auto& r : rays) {
        if (r[0] == 0 && r[1] == 0) throw precondition_error("fan has a zero ray");
        if (std::gcd(std::abs(r[0]), std::abs(r[1])) != 1)
            throw precondition_error("fan ray is not primitive");
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
        const auto& u = rays[i];
        const auto& v = rays[(i + 1) % rays.size()];
        if (det2(u, v) != 1)
            throw precondition_error("consecutive rays do not span a smooth cone");
    }
}

std::string Fan::to_json() const {
    json arr = json::array();
    for (const auto& r : rays) arr.push_back({r[0], r[1]});
    return arr.dump();
}

Fan dp7_fan() {
    Fan f{{{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {0, -1}}};
    f.validate();
    return f;
}

Fan square_fan() {
    Fan f{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
    f.validate();
    return f;
}

Fan hexagon_fan() {
    Fan f{{{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}}};
    f.validate();
    return f;
}

Fan fan_by_id(const std::string& id) {
    if (id == "dP7") return dp7_fan();
    if (id == "square") return square_fan();
    if (id == "hexagon") return hexagon_fan();
    throw domain_error("unknown fan id \"" + id + "\"");
}

Scalar Polytope::area() const {
    Scalar twice(0);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const auto& p = vertices[i];
        const auto& q = vertices[(i + 1) % vertices.size()];
        twice += p[0] * q[1] - p[1] * q[0];
    }
    if (twice.sign() < 0) twice = -twice;
    return twice / Scalar(2);
}

Polytope polytope(const Fan& fan, const TorusDivisor& d) {
    fan.validate();
    if (d.coeffs.size() != fan.size())
        throw dimension_error("torus divisor does not match the fan");
    const std::size_t n = fan.size();
    Polytope p;
    for (std::size_t i = 0; i < n; ++i) {
        // <m, v_i> = -c_i and <m, v_{i+1}> = -c_{i+1}; det is +1.
        const auto& u = fan.rays[i];
        const auto& v = fan.rays[(i + 1) % n];
        const Scalar cu = -d.coeffs[i];
        const Scalar cv = -d.coeffs[(i + 1) % n];
        const Scalar x = cu * Scalar(v[1]) - cv * Scalar(u[1]);
        const Scalar y = Scalar(u[0]) * cv - Scalar(v[0]) * cu;
        p.vertices.push_back({x, y});
    }
    for (const auto& vert : p.vertices)
        for (std::size_t i = 0; i < n; ++i) {
            const Scalar pairing = vert[0] * Scalar(fan.rays[i][0]) + vert[1] * Scalar(fan.rays[i][1]);
            if (pairing < -d.coeffs[i])
                throw degenerate_error("divisor is not ample: facet inequality fails at a vertex");
        }
    for (std::size_t i = 0; i < n; ++i)
        if (p.vertices[i] == p.vertices[(i + 1) % n])
            throw degenerate_error("divisor is not ample: a facet degenerates to a point");
    if (p.area().sign() == 0) throw degenerate_error("polytope has empty interior");
    return p;
}

std::array<Scalar, 2> barycenter(const Polytope& p) {
    if (p.vertices.size() < 3) throw degenerate_error("barycenter of a degenerate polytope");
    // Triangulate from vertices[0]; signed areas keep orientation honest.
    Scalar total(0), cx(0), cy(0);
    const auto& o = p.vertices[0];
    for (std::size_t i = 1; i + 1 < p.vertices.size(); ++i) {
        const auto& u = p.vertices[i];
        const auto& v = p.vertices[i + 1];
        const Scalar cross = (u[0] - o[0]) * (v[1] - o[1]) - (u[1] - o[1]) * (v[0] - o[0]);
        total += cross;
        cx += cross * (o[0] + u[0] + v[0]);
        cy += cross * (o[1] + u[1] + v[1]);
    }
    if (total.sign() == 0) throw degenerate_error("barycenter of a zero-area polytope");
    return {cx / (Scalar(3) * total), cy / (Scalar(3) * total)};
}

namespace {

Scalar s_from_polytope(const Polytope& p, const std::array<Scalar, 2>& bc,
                       const LatticeVector& v) {
    Scalar pairing_bc = bc[0] * Scalar(v[0]) + bc[1] * Scalar(v[1]);
    bool first = true;
    Scalar minimum(0);
    for (const auto& vert : p.vertices) {
        const Scalar value = vert[0] * Scalar(v[0]) + vert[1] * Scalar(v[1]);
        if (first || value < minimum) minimum = value;
        first = false;
    }
    return pairing_bc - minimum;
}

}  // namespace

Scalar toric_s(const Fan& fan, const TorusDivisor& d, const LatticeVector& v) {
    if (v[0] == 0 && v[1] == 0) throw precondition_error("toric_s of the zero vector");
    const Polytope p = polytope(fan, d);
    return s_from_polytope(p, barycenter(p), v);
}

namespace {

// Cone coordinates of v: index of the cone and (alpha, gamma) with
// v = alpha u_i + gamma u_{i+1}, alpha, gamma >= 0.
struct ConePosition {
    std::size_t cone;
    long alpha;
    long gamma;
};

ConePosition locate(const Fan& fan, const LatticeVector& v) {
    const std::size_t n = fan.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& u = fan.rays[i];
        const auto& w = fan.rays[(i + 1) % n];
        // Cramer with det(u, w) = 1.
        const long alpha = v[0] * w[1] - v[1] * w[0];
        const long gamma = u[0] * v[1] - u[1] * v[0];
        if (alpha >= 0 && gamma >= 0) return {i, alpha, gamma};
    }
    throw internal_error("complete fan failed to contain a vector");
}

}  // namespace

Scalar toric_a0(const Fan& fan, const LatticeVector& v) {
    if (v[0] == 0 && v[1] == 0) throw precondition_error("toric_a0 of the zero vector");
    const ConePosition pos = locate(fan, v);
    return Scalar(make_rat(pos.alpha + pos.gamma));
}

std::vector<Scalar> toric_ray_orders(const Fan& fan, const LatticeVector& v) {
    const ConePosition pos = locate(fan, v);
    std::vector<Scalar> orders(fan.size(), Scalar(0));
    orders[pos.cone] = Scalar(make_rat(pos.alpha));
    orders[(pos.cone + 1) % fan.size()] = Scalar(make_rat(pos.gamma));
    return orders;
}

std::string ScanResult::to_json() const {
    json arr = json::array();
    for (const auto& e : entries)
        arr.push_back({{"v", {e.v[0], e.v[1]}},
                       {"A", e.a.str()},
                       {"S", e.s.str()},
                       {"ratio", e.ratio.str()}});
    json j;
    j["min_ratio"] = min_ratio.str();
    j["argmin"] = {argmin[0], argmin[1]};
    j["entries"] = arr;
    return j.dump(2);
}

ScanResult toric_delta_scan(const Fan& fan, const TorusDivisor& d,
                            const std::vector<Scalar>& delta_coeffs, int box) {
    if (box < 2) throw precondition_error("toric_delta_scan: box >= 2");
    if (!delta_coeffs.empty() && delta_coeffs.size() != fan.size())
        throw dimension_error("boundary coefficients do not match the fan");
    const Polytope p = polytope(fan, d);
    const auto bc = barycenter(p);

    ScanResult result;
    bool first = true;
    for (long x = -box; x <= box; ++x) {
        for (long y = -box; y <= box; ++y) {
            if (x == 0 && y == 0) continue;
            if (std::gcd(std::abs(x), std::abs(y)) != 1) continue;
            const LatticeVector v{x, y};
            Scalar a = toric_a0(fan, v);
            if (!delta_coeffs.empty()) {
                const auto orders = toric_ray_orders(fan, v);
                for (std::size_t i = 0; i < orders.size(); ++i) a -= delta_coeffs[i] * orders[i];
            }
            const Scalar s = s_from_polytope(p, bc, v);
            if (s.sign() <= 0) throw internal_error("toric S must be positive for ample D");
            const Scalar ratio = a / s;
            result.entries.push_back({v, a, s, ratio});
            const bool better =
                first || ratio < result.min_ratio ||
                (ratio == result.min_ratio &&
                 (v[0] < result.argmin[0] || (v[0] == result.argmin[0] && v[1] < result.argmin[1])));
            if (better) {
                result.min_ratio = ratio;
                result.argmin = v;
            }
            first = false;
        }
    }
    std::sort(result.entries.begin(), result.entries.end(), [](const ScanEntry& a, const ScanEntry& b) {
        if (a.ratio != b.ratio) return a.ratio < b.ratio;
        if (a.v[0] != b.v[0]) return a.v[0] < b.v[0];
        return a.v[1] < b.v[1];
    });
    return result;
}

}  // namespace logdelta
