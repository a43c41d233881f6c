#pragma once

#include <string>
#include <utility>
#include <vector>

#include "logdelta/polynomial.hpp"
#include "logdelta/surface.hpp"

namespace logdelta {

/*
 * Zariski decomposition D = P + N relative to a finite curve universe:
 *   - P . G >= 0 for every universe curve G,
 *   - P . G  = 0 for every G in the support of N,
 *   - the support of N has negative-definite intersection matrix,
 *   - N has nonnegative coefficients and P + N = D.
 */
struct Decomposition {
    DivisorClass positive;
    std::vector<std::pair<CurveRecord, Rat>> negative;
};

// Iterative support augmentation: start from the empty support, adjoin every
// universe curve pairing negatively with the current positive part, solve the
// orthogonality system, repeat until stable. Throws
// not_pseudo_effective_error when the process produces a negative
// coefficient or a degenerate support.
Decomposition zariski_decompose(const SurfaceModel& model, const DivisorClass& d,
                                const std::vector<CurveRecord>& universe);
// Universe = the model's negative-candidate curves.
Decomposition zariski_decompose(const SurfaceModel& model, const DivisorClass& d);

// (positive part)^2 when pseudo-effective relative to the universe, else 0.
Scalar volume(const SurfaceModel& model, const DivisorClass& d);
Scalar volume(const SurfaceModel& model, const DivisorClass& d,
              const std::vector<CurveRecord>& universe);

/*
 * Exact volume family vol(L - x F) on [0, tau], tau the pseudo-effective
 * threshold. Within a chamber the negative support is fixed and the positive
 * part is affine in x, so each piece is a quadratic; chamber walls are the
 * exact points where a new curve's pairing with the positive part vanishes.
 * At every wall either the support strictly grows or the volume reaches 0.
 *
 * Preconditions: L^2 > 0, L . G > 0 for every universe curve G except F
 * itself, and L . F >= 0 (on an extraction the pullback polarization pairs
 * to zero with the extracted divisor).
 */
PiecewiseQuadratic volume_family(const SurfaceModel& model, const DivisorClass& l_class,
                                 const CurveRecord& f, const std::vector<CurveRecord>& universe);
// Universe = the model's negative candidates, plus F itself, plus C.
PiecewiseQuadratic volume_family(const SurfaceModel& model, const DivisorClass& l_class,
                                 const CurveRecord& f);

// Least x with vol(L - x F) = 0; rational on every preset family computed
// here, radical in general.
Scalar pseff_threshold(const SurfaceModel& model, const DivisorClass& l_class,
                       const CurveRecord& f, const std::vector<CurveRecord>& universe);
Scalar pseff_threshold(const SurfaceModel& model, const DivisorClass& l_class,
                       const CurveRecord& f);

// The default volume_family universe for a model and family divisor.
std::vector<CurveRecord> default_universe(const SurfaceModel& model, const CurveRecord& f);

// Serialization for the CSV emitter: rows (lo, hi, c0, c1, c2).
std::string volume_family_csv(const PiecewiseQuadratic& family);

}  // namespace logdelta
