#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logdelta/scalar.hpp"

namespace logdelta {

// Divisor class as coordinates over a fixed Picard-lattice basis. The
// ambient SurfaceModel owns the basis; a class is only meaningful together
// with its model.
struct DivisorClass {
    std::vector<Rat> coeffs;

    DivisorClass() = default;
    explicit DivisorClass(std::vector<Rat> c) : coeffs(std::move(c)) {}
    static DivisorClass zero(std::size_t rank) { return DivisorClass(std::vector<Rat>(rank, Rat(0))); }

    std::size_t rank() const { return coeffs.size(); }

    DivisorClass& operator+=(const DivisorClass& rhs);
    DivisorClass& operator-=(const DivisorClass& rhs);
    DivisorClass& operator*=(const Rat& s);
    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator*(const Rat& s, DivisorClass d) { return d *= s; }
    friend bool operator==(const DivisorClass& a, const DivisorClass& b) { return a.coeffs == b.coeffs; }
};

// Point of tangency data: contact order of this curve with the boundary C
// at a named point (1 transversal, 2 tangent). Curves not meeting C at
// named points carry no entries.
struct CurveRecord {
    std::string name;
    DivisorClass cls;
    bool negative_candidate = false;
    std::map<std::string, int> contact_with_C;
    std::optional<int> ray;  // index into the dP7 fan for torus-invariant curves
};

enum class FiberConfig { q1_singular, q2_singular, both_singular, neither };

std::string fiber_config_str(FiberConfig cfg);
FiberConfig parse_fiber_config(const std::string& text);

/*
 * Picard lattice with named curves. Instances are immutable after
 * construction; derived models (extra point-specific curves, extractions)
 * are built as copies.
 */
class SurfaceModel {
public:
    SurfaceModel(std::string id, std::vector<std::string> basis_names,
                 std::vector<std::vector<Rat>> gram, std::vector<CurveRecord> curves,
                 DivisorClass canonical);

    const std::string& id() const { return id_; }
    std::size_t rank() const { return basis_.size(); }
    const std::vector<std::string>& basis_names() const { return basis_; }
    const std::vector<std::vector<Rat>>& gram() const { return gram_; }
    const std::vector<CurveRecord>& curves() const { return curves_; }
    const DivisorClass& canonical_class() const { return canonical_; }

    const CurveRecord& curve(const std::string& name) const;
    const CurveRecord* find_curve(const std::string& name) const;

    DivisorClass basis_class(const std::string& name) const;

    Rat intersect(const DivisorClass& a, const DivisorClass& b) const;
    Rat self_intersection(const DivisorClass& a) const { return intersect(a, a); }

    // Copy of this model with one extra named curve (classes unchanged).
    SurfaceModel with_curve(CurveRecord extra) const;

    std::string to_json() const;

private:
    std::string id_;
    std::vector<std::string> basis_;
    std::vector<std::vector<Rat>> gram_;
    std::vector<CurveRecord> curves_;
    DivisorClass canonical_;
};

// Scalar-facing wrapper used by the numeric layer.
Scalar intersect(const SurfaceModel& model, const DivisorClass& a, const DivisorClass& b);

/*
 * Blowup of P1 x P1 at n distinct points of a curve of bidegree (1,2),
 * basis {H1, H2, E1..En}. The anti-log-canonical conic bundle is the first
 * ruling |H1|; q1 and q2 name the two ramification points of the double
 * cover C -> P1. fiber_config states which of them lie on singular fibers.
 * Convention: a single singular ramification point sits on the fiber split
 * by E1; with both singular, q1 uses E1 and q2 uses E2 (labels are symmetric).
 *
 * The curve universe lists C, every E_i and H1-E_i, and every second-ruling
 * member H2-E_i, plus the fiber germs through q1/q2 that the configuration
 * dictates (smooth fiber of class H1 tangent to C, second-ruling fiber of
 * class H2 transversal).
 */
SurfaceModel preset_I9Bn(int n, FiberConfig fiber_config);

// Rank-3 toric model of the degree-7 del Pezzo surface, curves E1, E, E2,
// E1inf, E2inf cross-linked to the rays of the dP7 fan, and C ~ E1+2E2+2E.
SurfaceModel preset_dP7_toric();

// Lookup by string id: "dP7", "I9B.<n>:<config>" with config one of
// q1-singular, q2-singular, both-singular, neither-singular (short forms
// q1-sing, q2-sing, both, neither also accepted).
SurfaceModel preset_by_id(const std::string& id);

// L(beta) = -(K_X + (1-beta) C), the polarization every computation uses.
DivisorClass log_anticanonical(const SurfaceModel& model, const Scalar& beta);

// True iff (4-n) beta + 2 > 0 and 0 < beta < 1.
bool log_fano_check(int n, const Scalar& beta);

// (L'^2)/(L^2) for the contraction (I.9B.n) -> (I.9B.n'), namely
// ((4-n') beta + 4) / ((4-n) beta + 4). Both pairs must be log Fano.
Scalar reduction_factor(int n, int n_prime, const Scalar& beta);

}  // namespace logdelta
