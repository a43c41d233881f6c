#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logdelta/surface.hpp"

namespace logdelta {

/*
 * Combinatorial record of a sequence of point blowups realizing an
 * exceptional divisor: q(i) = 0 when the i-th center is a free point of the
 * newest exceptional curve, q(i) = j > 0 when it also lies on the strict
 * transform of the j-th one. k is the largest index with q(k) = 0 (k = 1 for
 * a single blowup); the chain is required to stay free up to k.
 */
struct BranchData {
    int m = 1;
    std::map<int, int> q;  // keys 2..m, values in [0, i-2]

    void validate() const;
    int k() const;
};

// The weight pairs (a_i, b_i) attached to the blowup chain:
// (a_0,b_0) = (1,0), (a_1,b_1) = (1,1), (a_i,b_i) = (a_{q(i)},b_{q(i)}) + (a_{i-1},b_{i-1}).
struct AbSequence {
    std::vector<std::pair<long, long>> pairs;  // indices 0..m
    long a = 1;
    long b = 1;
    int k = 1;
};

// Runs the recursion and checks gcd(a_i, b_i) = 1 for i >= 1 and
// k = ceil(a/b) on the result.
AbSequence ab_sequence(const BranchData& branch);

// A(F) = a + b - min(j_C * b, a) * (1 - beta). j_C = 0 means the chain starts
// away from C, giving A = a + b.
Scalar log_discrepancy(long a, long b, int j_c, const Scalar& beta);

// mu_B = min(j_B * b, a): the multiplicity of a curve germ along the chain.
// The strict transform satisfies (B^Y . F) = mu_B/(ab) and
// (B^Y)^2 = B^2 - mu_B^2/(ab).
long germ_multiplicity(int j_b, long a, long b);

// A curve through the chain's starting point with its chain count j and its
// contact order with the boundary C there (1 transversal, 2 tangent).
struct CurveGerm {
    std::string curve;  // name of a CurveRecord on the ambient model
    int j = 1;
    int contact_with_C = 1;
};

/*
 * A candidate exceptional divisor: final weights (a, b), the chain count
 * j_C of the boundary (0 when the center is off C), the center's name, and
 * the germs of all model curves through the center. The full branch map is
 * retained only when the candidate came from explicit BranchData; the
 * geometry depends on (a, b) and the germ counts alone.
 */
struct PltCandidate {
    long a = 1;
    long b = 1;
    int j_c = 0;
    std::string center;
    std::vector<CurveGerm> germs;
    std::optional<BranchData> branch;

    int k() const;
    std::string label() const;
    std::string to_json() const;
};

/*
 * Admissibility of the candidate over (X, (1-beta)C) with beta <= 1/2:
 * j_C must be 1 or k, and the germ counts must fit on a single chain of
 * points: two transversal germs cannot both continue past the first center,
 * a tangent pair continues past it together, and at most one germ of a
 * tangent pair continues past the second center.
 */
bool plt_filter(const PltCandidate& cand, const Scalar& beta);

/*
 * Rank-(r+1) lattice model of the extraction Y -> X of the candidate:
 * basis gains F with F^2 = -1/(ab) and pullback.F = 0, every germ curve
 * is replaced by its strict transform (pullback minus mu F), everything
 * else pulls back unchanged, and K_Y = pullback K_X + (a+b-1) F.
 */
SurfaceModel extract_model(const SurfaceModel& x_model, const PltCandidate& cand);

// Pullback of a class on X to the extraction (appends a zero F-coordinate).
DivisorClass pullback_to_extraction(const SurfaceModel& y_model, const DivisorClass& on_x);

}  // namespace logdelta
