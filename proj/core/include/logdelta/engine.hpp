#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logdelta/plt.hpp"
#include "logdelta/polynomial.hpp"
#include "logdelta/surface.hpp"
#include "logdelta/zariski.hpp"

namespace logdelta {

enum class PointKind {
    generic_on_c,      // general point of C: germs C and both ruling members, all transversal
    off_c,             // general point off C: the two ruling members only
    q_smooth_fiber,    // ramification point, smooth fiber: tangent fiber germ
    q_singular_fiber,  // ramification point, split fiber: two transversal components
    toric_node,        // named torus-fixed configuration on the dP7 model
    curve_on_x         // F is a curve on X itself, no extraction
};

std::string point_kind_str(PointKind k);

// A center (or curve) to take candidates at, together with the model carrying
// every germ curve the configuration needs.
struct PointSpec {
    PointKind kind = PointKind::generic_on_c;
    std::string name;               // "q1", "q2", node id, or curve name
    SurfaceModel model;             // preset, possibly with point-specific curves added
    std::vector<CurveGerm> germs;   // template germs (j values filled by enumeration)
};

// q1/q2 on an (I.9B.n) preset; the kind follows the preset's fiber config.
PointSpec q_point(const SurfaceModel& preset, const std::string& q_name);
// General point of C (name "p") on an (I.9B.n) preset or dP7.
PointSpec generic_point_on_c(const SurfaceModel& preset);
// General point off C.
PointSpec generic_point_off_c(const SurfaceModel& preset);
// Named dP7 configurations: "E1inf-E2inf", "E1-E2inf", "C-E" (on C),
// "E2-E1inf", "E2-E" (off C).
PointSpec dp7_node(const SurfaceModel& dp7, const std::string& node);
// Curve candidate (no extraction).
PointSpec curve_point(const SurfaceModel& preset, const std::string& curve_name);

/*
 * All plt-admissible exceptional candidates at the point with a + b <= cap:
 * coprime weights, j_C in {1, k}, and every chain-consistent assignment of
 * germ counts (a chain may continue along any single germ; a tangent pair
 * continues together through the second center). Deterministically ordered
 * by (a+b, a, b, j_C, germ counts).
 */
std::vector<PltCandidate> enumerate_candidates(const PointSpec& point, int cap);

struct CandidateResult {
    std::optional<PltCandidate> candidate;  // empty for curve-type entries
    std::string curve_name;                 // set for curve-type entries
    Scalar a;
    Scalar s;
    Scalar ratio;
    std::optional<PiecewiseQuadratic> vol;
    bool dominated = false;  // ratio >= 3/2: outside the regime that needs plt candidates

    std::string label() const;
};

// S_L(F) = integral of vol(L - x F) over [0, tau], divided by L^2.
Scalar s_invariant(const SurfaceModel& model, const DivisorClass& l_class, const CurveRecord& f);
Scalar s_invariant(const SurfaceModel& model, const DivisorClass& l_class, const CurveRecord& f,
                   const std::vector<CurveRecord>& universe);

// Full evaluation of an exceptional candidate on its extraction.
CandidateResult evaluate_candidate(const SurfaceModel& x_model, const PltCandidate& cand,
                                   const Scalar& beta);

// Curve-type evaluation on X directly: A = beta for C, 1 otherwise.
CandidateResult evaluate_curve(const SurfaceModel& x_model, const std::string& curve_name,
                               const Scalar& beta);

enum class TheoremCase { singular, nonsingular };

// Closed-form delta of the main statement; beta must lie in (0, 1/(7n)).
Scalar theorem_delta(int n, const Scalar& beta, TheoremCase which);

// Minimum ratio over the enumerated candidates at the point (plus the curve
// itself for curve-type points), with the argmin certificate. Ties break
// toward smaller a+b, then lexicographic (a, b, j_C).
std::pair<Scalar, CandidateResult> delta_at_point(int n, const Scalar& beta,
                                                  const PointSpec& point, int cap);

struct DeltaReport {
    int n = 1;
    Scalar beta;
    FiberConfig config = FiberConfig::neither;
    int cap = 30;
    Scalar delta;
    CandidateResult minimizer;
    std::vector<std::pair<std::string, Scalar>> point_minima;   // per ramification point
    std::vector<std::pair<std::string, Scalar>> curve_ratios;   // curve-type candidates
    Scalar away_bound;  // lower bound for candidates centered away from q1, q2
    std::vector<CandidateResult> candidates;  // full evaluated list at q1
    // Internal certificates: closed-form equality, away-bound domination,
    // and stability of the q1 minimum from half the cap onward (the
    // heuristic tail certificate).
    std::vector<std::pair<std::string, bool>> checks;

    std::string to_json(bool include_candidates) const;
};

/*
 * End-to-end delta: candidate minima at q1 and q2 (per the fiber
 * configuration), curve candidates, and the reduction-to-baseline lower
 * bound for every center away from the ramification points. The result is
 * checked against the closed form for the applicable case.
 */
DeltaReport delta_overall(int n, const Scalar& beta, FiberConfig config, int cap = 30);

// S(F) <= (V f / eps + eps)/3 when L - eps F is nef; V, f, eps > 0.
Scalar bound_s_nef(const Scalar& v, const Scalar& f, const Scalar& eps);

// Concavity tail bound: vol(x) <= vol'(eps)^2 / (4 vol(eps)) *
// (x - eps + 2 vol(eps)/vol'(eps))^2 for x >= eps, given vol(eps) > 0 and
// vol'(eps) < 0.
Scalar bound_vol_tail(const Scalar& vol_eps, const Scalar& dvol_eps, const Scalar& eps,
                      const Scalar& x);

struct StepSample {
    Scalar beta;
    long a = 0;
    long b = 0;
    int n = 0;
    Scalar engine;
    Scalar reference;
    Scalar margin;  // reference - engine (nonnegative for bound steps, zero for exact steps)
};

struct StepReport {
    std::string step_id;
    std::string description;
    bool is_bound = false;  // engine <= reference rather than equality
    bool pass = false;
    std::vector<StepSample> samples;

    std::string to_json() const;
};

// Known step ids; see verify_step_formula.
std::vector<std::string> step_catalog_ids();

/*
 * Conformance check of the engine against a catalog of closed forms and
 * displayed volume families: exact steps assert equality, bound steps assert
 * engine S <= reference at every sample. Unknown ids throw domain_error.
 */
StepReport verify_step_formula(const std::string& step_id, const std::vector<Scalar>& betas);

}  // namespace logdelta
