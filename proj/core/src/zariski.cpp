#include "logdelta/zariski.hpp"

#include <algorithm>
#include <optional>

namespace logdelta {

namespace {

// Dense exact Gaussian elimination with partial (nonzero) pivoting.
// Returns nullopt when the matrix is singular.
std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> a,
                                             std::vector<Rat> rhs) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            if (a[row][col] == 0) continue;
            const Rat factor = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
            rhs[row] -= factor * rhs[col];
        }
    }
    std::vector<Rat> x(n, Rat(0));
    for (std::size_t i = n; i-- > 0;) {
        Rat acc = rhs[i];
        for (std::size_t k = i + 1; k < n; ++k) acc -= a[i][k] * x[k];
        x[i] = acc / a[i][i];
    }
    return x;
}

// Sylvester test: (-1)^k det_k > 0 for every leading principal minor. Row
// operations that add multiples of earlier rows preserve all leading minors,
// so det_k is the running pivot product; a zero pivot means det_k = 0, which
// already fails the criterion, and no row swaps are ever needed.
bool negative_definite(std::vector<std::vector<Rat>> a) {
    const std::size_t n = a.size();
    Rat minor(1);
    for (std::size_t col = 0; col < n; ++col) {
        if (a[col][col] == 0) return false;
        minor *= a[col][col];
        const bool want_positive = (col % 2 == 1);
        if (want_positive ? minor <= 0 : minor >= 0) return false;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (a[row][col] == 0) continue;
            const Rat factor = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
        }
    }
    return true;
}

struct SupportSystem {
    std::vector<std::size_t> members;           // indices into the universe
    std::vector<Rat> c0, c1;                    // coefficients, affine in x
    DivisorClass p0, p1;                        // positive part, affine in x
};

// Solves (D0 + x D1 - sum c_i(x) G_i) . G_j = 0 for affine coefficients.
std::optional<SupportSystem> solve_support(const SurfaceModel& model,
                                           const std::vector<CurveRecord>& universe,
                                           const std::vector<std::size_t>& members,
                                           const DivisorClass& d0, const DivisorClass& d1) {
    SupportSystem sys;
    sys.members = members;
    const std::size_t m = members.size();
    std::vector<std::vector<Rat>> gram(m, std::vector<Rat>(m));
    std::vector<Rat> r0(m), r1(m);
    for (std::size_t i = 0; i < m; ++i) {
        const DivisorClass& gi = universe[members[i]].cls;
        for (std::size_t j = 0; j < m; ++j)
            gram[i][j] = model.intersect(gi, universe[members[j]].cls);
        r0[i] = model.intersect(d0, gi);
        r1[i] = model.intersect(d1, gi);
    }
    if (m == 0) {
        sys.p0 = d0;
        sys.p1 = d1;
        return sys;
    }
    auto c0 = solve_linear(gram, r0);
    auto c1 = solve_linear(gram, r1);
    if (!c0 || !c1) return std::nullopt;
    sys.c0 = *c0;
    sys.c1 = *c1;
    sys.p0 = d0;
    sys.p1 = d1;
    for (std::size_t i = 0; i < m; ++i) {
        sys.p0 -= sys.c0[i] * universe[members[i]].cls;
        sys.p1 -= sys.c1[i] * universe[members[i]].cls;
    }
    return sys;
}

// gram * v, so pairings against many curves become O(rank) dot products.
std::vector<Rat> dualize(const SurfaceModel& model, const DivisorClass& v) {
    const std::size_t r = model.rank();
    std::vector<Rat> dual(r, Rat(0));
    for (std::size_t i = 0; i < r; ++i) {
        if (v.coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < r; ++j) {
            const Rat& g = model.gram()[i][j];
            if (g != 0) dual[j] += g * v.coeffs[i];
        }
    }
    return dual;
}

Rat dual_dot(const std::vector<Rat>& dual, const DivisorClass& v) {
    Rat acc(0);
    for (std::size_t i = 0; i < dual.size(); ++i)
        if (v.coeffs[i] != 0 && dual[i] != 0) acc += dual[i] * v.coeffs[i];
    return acc;
}

std::vector<std::vector<Rat>> support_gram(const SurfaceModel& model,
                                           const std::vector<CurveRecord>& universe,
                                           const std::vector<std::size_t>& members) {
    std::vector<std::vector<Rat>> gram(members.size(), std::vector<Rat>(members.size()));
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = 0; j < members.size(); ++j)
            gram[i][j] = model.intersect(universe[members[i]].cls, universe[members[j]].cls);
    return gram;
}

}  // namespace

std::vector<CurveRecord> default_universe(const SurfaceModel& model, const CurveRecord& f) {
    std::vector<CurveRecord> universe;
    for (const auto& c : model.curves())
        if (c.negative_candidate || c.name == f.name || c.name == "C") universe.push_back(c);
    if (std::none_of(universe.begin(), universe.end(),
                     [&](const CurveRecord& c) { return c.name == f.name; }))
        universe.push_back(f);
    return universe;
}

Decomposition zariski_decompose(const SurfaceModel& model, const DivisorClass& d,
                                const std::vector<CurveRecord>& universe) {
    if (d.rank() != model.rank()) throw dimension_error("class does not belong to the model");
    const DivisorClass zero = DivisorClass::zero(model.rank());
    std::vector<std::size_t> members;
    std::vector<bool> in_support(universe.size(), false);

    for (std::size_t round = 0; round <= universe.size(); ++round) {
        auto sys = solve_support(model, universe, members, d, zero);
        if (!sys)
            throw not_pseudo_effective_error("degenerate support system: class is not "
                                             "pseudo-effective relative to the universe");
        const std::vector<Rat> dual_p = dualize(model, sys->p0);
        bool grew = false;
        for (std::size_t u = 0; u < universe.size(); ++u) {
            if (in_support[u]) continue;
            if (sgn(dual_dot(dual_p, universe[u].cls)) < 0) {
                members.push_back(u);
                in_support[u] = true;
                grew = true;
            }
        }
        if (grew) continue;

        for (const Rat& c : sys->c0)
            if (c < 0)
                throw not_pseudo_effective_error("negative coefficient in the support system: "
                                                 "class is not pseudo-effective");
        if (!members.empty() && !negative_definite(support_gram(model, universe, members)))
            throw not_pseudo_effective_error("support is not negative definite: class is not "
                                             "pseudo-effective");
        Decomposition result;
        result.positive = sys->p0;
        for (std::size_t i = 0; i < members.size(); ++i)
            if (sys->c0[i] != 0) result.negative.emplace_back(universe[members[i]], sys->c0[i]);
        return result;
    }
    throw internal_error("zariski iteration failed to stabilize");
}

Decomposition zariski_decompose(const SurfaceModel& model, const DivisorClass& d) {
    std::vector<CurveRecord> universe;
    for (const auto& c : model.curves())
        if (c.negative_candidate) universe.push_back(c);
    return zariski_decompose(model, d, universe);
}

Scalar volume(const SurfaceModel& model, const DivisorClass& d,
              const std::vector<CurveRecord>& universe) {
    try {
        const Decomposition z = zariski_decompose(model, d, universe);
        const Rat v = model.intersect(z.positive, z.positive);
        if (v < 0)
            throw internal_error("positive part with negative self-intersection; "
                                 "the curve universe is incomplete for this class");
        return Scalar(v);
    } catch (const not_pseudo_effective_error&) {
        return Scalar(0);
    }
}

Scalar volume(const SurfaceModel& model, const DivisorClass& d) {
    std::vector<CurveRecord> universe;
    for (const auto& c : model.curves())
        if (c.negative_candidate) universe.push_back(c);
    return volume(model, d, universe);
}

namespace {

struct ChamberWalk {
    std::vector<Scalar> breaks;
    std::vector<Polynomial> pieces;
};

Polynomial chamber_piece(const SurfaceModel& model, const SupportSystem& sys) {
    const Rat q0 = model.intersect(sys.p0, sys.p0);
    const Rat q1 = Rat(2) * model.intersect(sys.p0, sys.p1);
    const Rat q2 = model.intersect(sys.p1, sys.p1);
    return Polynomial({Scalar(q0), Scalar(q1), Scalar(q2)});
}

// Smallest root of the (rational) quadratic piece at or after x_cur.
std::optional<Scalar> first_root_from(const Polynomial& piece, const Rat& x_cur) {
    const Scalar a = piece.coeff(2), b = piece.coeff(1), c = piece.coeff(0);
    std::vector<Scalar> roots;
    if (a.sign() == 0) {
        if (b.sign() == 0) return std::nullopt;  // nonzero constant: no root
        roots.push_back(-c / b);
    } else {
        const Rat disc = (b * b - Scalar(4) * a * c).rat();
        if (sign_of(disc) < 0) return std::nullopt;
        const Scalar sq = Scalar::sqrt_of(disc);
        roots.push_back((-b - sq) / (Scalar(2) * a));
        roots.push_back((-b + sq) / (Scalar(2) * a));
        if (roots[0] > roots[1]) std::swap(roots[0], roots[1]);
    }
    const Scalar lo(x_cur);
    for (const auto& r : roots)
        if (r >= lo) return r;
    return std::nullopt;
}

}  // namespace

PiecewiseQuadratic volume_family(const SurfaceModel& model, const DivisorClass& l_class,
                                 const CurveRecord& f, const std::vector<CurveRecord>& universe) {
    if (l_class.rank() != model.rank()) throw dimension_error("polarization rank mismatch");
    if (model.intersect(l_class, l_class) <= 0)
        throw precondition_error("volume_family: polarization has nonpositive self-intersection");
    for (const auto& g : universe) {
        const Rat pairing = model.intersect(l_class, g.cls);
        if (g.name == f.name ? pairing < 0 : pairing <= 0)
            throw precondition_error("volume_family: polarization not positive on universe curve " +
                                     g.name);
    }

    const DivisorClass d0 = l_class;
    DivisorClass d1 = DivisorClass::zero(model.rank());
    d1 -= f.cls;

    ChamberWalk walk;
    Rat x_cur(0);
    std::vector<std::size_t> members;
    std::vector<bool> in_support(universe.size(), false);

    for (std::size_t round = 0; round <= universe.size() + 1; ++round) {
        auto sys = solve_support(model, universe, members, d0, d1);
        if (!sys) throw internal_error("volume_family: singular support system inside a chamber");
        const Polynomial piece = chamber_piece(model, *sys);

        // Earliest wall after x_cur: a universe curve outside the support
        // whose pairing with the positive part decreases through zero.
        const std::vector<Rat> dual_p0 = dualize(model, sys->p0);
        const std::vector<Rat> dual_p1 = dualize(model, sys->p1);
        std::optional<Rat> wall;
        std::vector<std::size_t> wall_curves;
        for (std::size_t u = 0; u < universe.size(); ++u) {
            if (in_support[u]) continue;
            const Rat f0 = dual_dot(dual_p0, universe[u].cls);
            const Rat f1 = dual_dot(dual_p1, universe[u].cls);
            if (f0 + f1 * x_cur < 0)
                throw internal_error("volume_family: pairing already negative at chamber start");
            if (f1 >= 0) continue;
            const Rat r = -f0 / f1;
            if (r < x_cur) continue;
            if (!wall || r < *wall) {
                wall = r;
                wall_curves = {u};
            } else if (r == *wall) {
                wall_curves.push_back(u);
            }
        }

        const auto vanish = first_root_from(piece, x_cur);
        if (vanish && (!wall || *vanish <= Scalar(*wall))) {
            if (Scalar(x_cur) == *vanish) {
                if (walk.pieces.empty())
                    throw precondition_error("volume_family: polarization is not big");
                break;  // previous chamber already ended exactly at tau
            }
            walk.breaks.push_back(Scalar(x_cur));
            walk.breaks.push_back(*vanish);
            walk.pieces.push_back(piece);
            break;
        }
        if (!wall)
            throw cap_exceeded_error("volume_family: volume stays positive beyond all "
                                     "chamber walls (universe exhausted)");

        if (*wall > x_cur) {
            walk.breaks.push_back(Scalar(x_cur));
            walk.breaks.push_back(Scalar(*wall));
            walk.pieces.push_back(piece);
        }
        for (std::size_t u : wall_curves) {
            members.push_back(u);
            in_support[u] = true;
        }
        if (!negative_definite(support_gram(model, universe, members)))
            throw internal_error("volume_family: support not negative definite while the "
                                 "volume is still positive (universe incomplete?)");
        x_cur = *wall;
    }

    if (walk.pieces.empty()) throw internal_error("volume_family: no chambers produced");

    // Merge duplicated interior breakpoints from the per-chamber emission.
    std::vector<Scalar> breaks;
    breaks.push_back(walk.breaks.front());
    for (std::size_t i = 0; i < walk.pieces.size(); ++i) breaks.push_back(walk.breaks[2 * i + 1]);
    PiecewiseQuadratic family(std::move(breaks), std::move(walk.pieces));
    if (!family.is_continuous())
        throw internal_error("volume_family: chamber pieces disagree at a wall");
    return family;
}

PiecewiseQuadratic volume_family(const SurfaceModel& model, const DivisorClass& l_class,
                                 const CurveRecord& f) {
    return volume_family(model, l_class, f, default_universe(model, f));
}

Scalar pseff_threshold(const SurfaceModel& model, const DivisorClass& l_class,
                       const CurveRecord& f, const std::vector<CurveRecord>& universe) {
    return volume_family(model, l_class, f, universe).domain_hi();
}

Scalar pseff_threshold(const SurfaceModel& model, const DivisorClass& l_class,
                       const CurveRecord& f) {
    return pseff_threshold(model, l_class, f, default_universe(model, f));
}

std::string volume_family_csv(const PiecewiseQuadratic& family) { return family.to_csv(); }

}  // namespace logdelta
