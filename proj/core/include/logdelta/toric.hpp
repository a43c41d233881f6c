#pragma once

#include <array>
#include <string>
#include <vector>

#include "logdelta/scalar.hpp"

namespace logdelta {

using LatticeVector = std::array<long, 2>;

// Complete smooth fan in Z^2: primitive rays in counterclockwise order,
// consecutive pairs spanning cones of determinant +1.
struct Fan {
    std::vector<LatticeVector> rays;

    void validate() const;
    std::size_t size() const { return rays.size(); }
    std::string to_json() const;  // JSON array of [x, y] rays
};

// Fan of the degree-7 del Pezzo surface; ray order E1, E, E2, E1inf, E2inf.
Fan dp7_fan();
// P1 x P1: rays (1,0),(0,1),(-1,0),(0,-1).
Fan square_fan();
// Degree-6 hexagon: P1 x P1 blown up at two opposite torus-fixed points.
Fan hexagon_fan();
// Lookup by id: "dP7", "square", "hexagon".
Fan fan_by_id(const std::string& id);

struct TorusDivisor {
    std::vector<Scalar> coeffs;  // one per ray
};

struct Polytope {
    std::vector<std::array<Scalar, 2>> vertices;  // ordered along the boundary

    Scalar area() const;
};

// Moment polytope {m : <m, v_i> >= -c_i}; exact rational vertices from
// adjacent ray pairs. Throws degenerate_error unless every facet is active
// and the polytope is two-dimensional (D ample).
Polytope polytope(const Fan& fan, const TorusDivisor& d);

// Exact centroid via triangulation from a vertex.
std::array<Scalar, 2> barycenter(const Polytope& p);

// Expected vanishing order of the toric valuation v against the
// polarization of d: <v, barycenter> - min over the polytope of <v, .>.
Scalar toric_s(const Fan& fan, const TorusDivisor& d, const LatticeVector& v);

// Log discrepancy of the toric valuation v over the smooth toric surface
// with empty boundary: alpha + gamma for v = alpha u_i + gamma u_{i+1} in
// its cone.
Scalar toric_a0(const Fan& fan, const LatticeVector& v);

// ord_v of each ray divisor: the cone coordinates of v, zero elsewhere.
std::vector<Scalar> toric_ray_orders(const Fan& fan, const LatticeVector& v);

struct ScanEntry {
    LatticeVector v{0, 0};
    Scalar a;
    Scalar s;
    Scalar ratio;
};

struct ScanResult {
    Scalar min_ratio;
    LatticeVector argmin{0, 0};
    std::vector<ScanEntry> entries;  // sorted by ratio, then lexicographically

    std::string to_json() const;
};

// Minimum of (A_0(v) - sum_i delta_i ord_v(D_i)) / S(v) over primitive v
// with |coordinates| <= box. Ties break toward the lexicographically
// smallest v. delta_coeffs may be empty (no boundary) or one per ray.
ScanResult toric_delta_scan(const Fan& fan, const TorusDivisor& d,
                            const std::vector<Scalar>& delta_coeffs, int box);

}  // namespace logdelta
