#include "logdelta/engine.hpp"
#include "logdelta/toric.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>

namespace logdelta {

using nlohmann::json;

namespace {

// c0 + c1 b + c2 b^2 + ...
Scalar beta_poly(std::initializer_list<long> coeffs, const Scalar& beta) {
    Scalar acc(0);
    Scalar power(1);
    for (long c : coeffs) {
        acc += Scalar(make_rat(c)) * power;
        power *= beta;
    }
    return acc;
}

TorusDivisor dp7_polarization(const Scalar& beta) {
    // Coefficients along rays E1, E, E2, E1inf, E2inf.
    return TorusDivisor{{beta + Scalar(1), Scalar(2) * beta + Scalar(1), Scalar(2) * beta,
                         Scalar(0), Scalar(0)}};
}

struct StepContext {
    std::vector<Scalar> betas;
    StepReport report;

    void record(const Scalar& beta, long a, long b, int n, const Scalar& engine,
                const Scalar& reference, bool bound) {
        StepSample s;
        s.beta = beta;
        s.a = a;
        s.b = b;
        s.n = n;
        s.engine = engine;
        s.reference = reference;
        s.margin = reference - engine;
        const bool ok = bound ? s.margin.sign() >= 0 : s.margin.sign() == 0;
        if (!ok) report.pass = false;
        report.samples.push_back(std::move(s));
    }
};

Scalar q_candidate_s(int n, FiberConfig cfg, const std::string& q, long a, long b, int j_c,
                     std::vector<std::pair<std::string, int>> germ_overrides, const Scalar& beta) {
    const SurfaceModel x = preset_I9Bn(n, cfg);
    PointSpec point = q_point(x, q);
    PltCandidate cand;
    cand.a = a;
    cand.b = b;
    cand.j_c = j_c;
    cand.center = q;
    cand.germs = point.germs;
    for (auto& g : cand.germs) {
        if (g.curve == "C") g.j = j_c;
        for (const auto& [name, j] : germ_overrides)
            if (g.curve == name) g.j = j;
    }
    return evaluate_candidate(x, cand, beta).s;
}

CandidateResult q_candidate_result(int n, FiberConfig cfg, const std::string& q, long a, long b,
                                   int j_c, std::vector<std::pair<std::string, int>> overrides,
                                   const Scalar& beta) {
    const SurfaceModel x = preset_I9Bn(n, cfg);
    PointSpec point = q_point(x, q);
    PltCandidate cand;
    cand.a = a;
    cand.b = b;
    cand.j_c = j_c;
    cand.center = q;
    cand.germs = point.germs;
    for (auto& g : cand.germs) {
        if (g.curve == "C") g.j = j_c;
        for (const auto& [name, j] : overrides)
            if (g.curve == name) g.j = j;
    }
    return evaluate_candidate(x, cand, beta);
}

// The tangent fiber germ continues with the boundary chain: j = 2 once
// j_C = k >= 2.
std::vector<std::pair<std::string, int>> smooth_chain_overrides(const std::string& q, long a, long b,
                                                                int j_c) {
    const int k = static_cast<int>((a + b - 1) / b);
    if (j_c == k && k >= 2) return {{"l_" + q, 2}};
    return {};
}

// Piecewise comparison after refining both chamber lists to a common
// partition of [lo, hi].
bool same_family_on(const PiecewiseQuadratic& got, const PiecewiseQuadratic& expected,
                    const Scalar& lo, const Scalar& hi) {
    std::vector<Scalar> cuts;
    auto add_cuts = [&](const PiecewiseQuadratic& f) {
        for (const auto& b : f.breakpoints())
            if (lo < b && b < hi) cuts.push_back(b);
    };
    cuts.push_back(lo);
    cuts.push_back(hi);
    add_cuts(got);
    add_cuts(expected);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Scalar mid = (cuts[i] + cuts[i + 1]) / Scalar(2);
        // Compare quadratics on the subinterval at three points.
        for (const Scalar& x : {cuts[i], mid, cuts[i + 1]}) {
            if (got(x) != expected(x)) return false;
        }
    }
    return true;
}

using StepFn = std::function<void(StepContext&)>;

Scalar dp7_l2(const Scalar& beta) { return beta_poly({0, 4, 3}, beta); }  // 3b^2 + 4b

void step_s7_2(StepContext& ctx) {
    const SurfaceModel x = preset_I9Bn(1, FiberConfig::neither);
    for (const auto& beta : ctx.betas) {
        const Scalar engine = s_invariant(x, log_anticanonical(x, beta), x.curve("C"));
        const Scalar reference = beta * (beta + Scalar(2)) / beta_poly({4, 3}, beta);
        ctx.record(beta, 0, 0, 1, engine, reference, false);
    }
}

void toric_s_step(StepContext& ctx, const std::function<LatticeVector(long, long)>& vec,
                  const std::function<Scalar(long, long, const Scalar&)>& reference) {
    const Fan fan = dp7_fan();
    const std::vector<std::pair<long, long>> pairs = {{1, 1}, {2, 1}, {3, 2}, {5, 3}};
    for (const auto& beta : ctx.betas)
        for (const auto& [a, b] : pairs) {
            const Scalar engine = toric_s(fan, dp7_polarization(beta), vec(a, b));
            ctx.record(beta, a, b, 1, engine, reference(a, b, beta), false);
        }
}

void step_s7_5a(StepContext& ctx) {
    toric_s_step(ctx, [](long a, long b) { return LatticeVector{-a, -b}; },
                 [](long a, long b, const Scalar& beta) {
                     return (Scalar(make_rat(a)) * beta_poly({6, 9, 4}, beta) +
                             Scalar(make_rat(b)) * beta_poly({0, 12, 7}, beta)) /
                            (Scalar(3) * beta_poly({4, 3}, beta));
                 });
}

void step_s7_5b(StepContext& ctx) {
    toric_s_step(ctx, [](long a, long b) { return LatticeVector{-b, -a}; },
                 [](long a, long b, const Scalar& beta) {
                     return (Scalar(make_rat(a)) * beta_poly({0, 12, 7}, beta) +
                             Scalar(make_rat(b)) * beta_poly({6, 9, 4}, beta)) /
                            (Scalar(3) * beta_poly({4, 3}, beta));
                 });
}

void step_s7_8a(StepContext& ctx) {
    toric_s_step(ctx, [](long a, long b) { return LatticeVector{a, -b}; },
                 [](long a, long b, const Scalar& beta) {
                     return (Scalar(make_rat(-a)) * beta_poly({6, 9, 4}, beta) +
                             Scalar(make_rat(b)) * beta_poly({0, 12, 7}, beta)) /
                                (Scalar(3) * beta_poly({4, 3}, beta)) +
                            Scalar(make_rat(a)) * (beta + Scalar(1));
                 });
}

void step_s7_8b(StepContext& ctx) {
    toric_s_step(ctx, [](long a, long b) { return LatticeVector{b, -a}; },
                 [](long a, long b, const Scalar& beta) {
                     return (Scalar(make_rat(a)) * beta_poly({0, 12, 7}, beta) -
                             Scalar(make_rat(b)) * beta_poly({6, 9, 4}, beta)) /
                                (Scalar(3) * beta_poly({4, 3}, beta)) +
                            Scalar(make_rat(b)) * (beta + Scalar(1));
                 });
}

const std::vector<int> kStepNs = {1, 2, 3, 4, 6, 8};

Scalar scaled_beta(const Scalar& beta, int n) { return beta / Scalar(make_rat(n)); }

void step_i2(StepContext& ctx) {
    const std::vector<std::pair<long, long>> pairs = {{1, 1}, {2, 1}, {3, 2}};
    for (int n : kStepNs)
        for (const auto& beta0 : ctx.betas) {
            const Scalar beta = scaled_beta(beta0, n);
            for (const auto& [a, b] : pairs) {
                const Scalar engine =
                    q_candidate_s(n, FiberConfig::neither, "q1", a, b, 1, {}, beta);
                const Scalar reference =
                    (Scalar(make_rat(a)) * beta_poly({0, 24, -4L * n + 20}, beta) +
                     Scalar(make_rat(b)) *
                         beta_poly({12, -6L * n + 24, 1L * n * n - 7 * n + 13}, beta)) /
                    (Scalar(6) * (Scalar(make_rat(4 - n)) * beta + Scalar(4)));
                ctx.record(beta, a, b, n, engine, reference, true);
            }
        }
}

Scalar nef_interval_bound(int n, long a, long b, const Scalar& beta) {
    const Scalar c = Scalar(make_rat(4 - n)) * beta + Scalar(2);
    return (Scalar(make_rat(a)) * (Scalar(make_rat(4 - n)) * beta * beta + Scalar(4) * beta) +
            Scalar(make_rat(b)) * c * c) /
           (Scalar(3) * c);
}

Scalar mid_regime_bound(int n, long a, long b, const Scalar& beta) {
    return (Scalar(make_rat(a)) * beta_poly({0, 6, -1L * n + 4}, beta) +
            Scalar(make_rat(b)) * beta_poly({12, -6L * n + 24, 1L * n * n - 8 * n + 16}, beta)) /
           (Scalar(3) * (Scalar(make_rat(4 - n)) * beta + Scalar(4)));
}

// Smallest integer a with a/b past the nef-regime threshold ((4-n)beta+2)/beta.
long regime_one_numerator(int n, long b, const Scalar& beta) {
    const Rat bound = ((Scalar(make_rat(4 - n)) * beta + Scalar(2)) / beta).rat() * make_rat(b);
    Int ceil_q;
    mpz_cdiv_q(ceil_q.get_mpz_t(), bound.get_num().get_mpz_t(), bound.get_den().get_mpz_t());
    long a = ceil_q.get_si() + 1;
    while (std::gcd(a, b) != 1) ++a;
    return a;
}

void step_i3(StepContext& ctx) {
    for (int n : kStepNs)
        for (const auto& beta0 : ctx.betas) {
            const Scalar beta = scaled_beta(beta0, n);
            // Nef regime: a/b beyond ((4-n)beta+2)/beta.
            {
                const long b = 1;
                const long a = regime_one_numerator(n, b, beta);
                const Scalar engine = q_candidate_s(n, FiberConfig::neither, "q1", a, b,
                                                    static_cast<int>(a), {{"l_q1", 2}}, beta);
                ctx.record(beta, a, b, n, engine, nef_interval_bound(n, a, b, beta), true);
            }
            // Middle regime, and the n = 1 shallow-slope regime.
            const std::vector<std::pair<long, long>> pairs =
                n == 1 ? std::vector<std::pair<long, long>>{{4, 1}, {5, 2}, {8, 3}}
                       : std::vector<std::pair<long, long>>{{4, 1}, {7, 2}};
            for (const auto& [a, b] : pairs) {
                const int k = static_cast<int>((a + b - 1) / b);
                const Scalar engine = q_candidate_s(n, FiberConfig::neither, "q1", a, b, k,
                                                    {{"l_q1", 2}}, beta);
                Scalar reference = mid_regime_bound(n, a, b, beta);
                if (n == 1 && make_rat(a, b) < make_rat(3)) {
                    reference = (Scalar(make_rat(a)) * beta_poly({0, 2, 1}, beta) +
                                 Scalar(make_rat(b)) * beta_poly({4, 6, 3}, beta)) /
                                beta_poly({4, 3}, beta);
                }
                ctx.record(beta, a, b, n, engine, reference, true);
            }
        }
}

void step_i4(StepContext& ctx) {
    for (int n = 1; n <= 8; ++n)
        for (const auto& beta0 : ctx.betas) {
            const Scalar beta = scaled_beta(beta0, n);
            const CandidateResult r = q_candidate_result(n, FiberConfig::neither, "q1", 2, 1, 2,
                                                         smooth_chain_overrides("q1", 2, 1, 2), beta);
            ctx.record(beta, 2, 1, n, r.ratio, theorem_delta(n, beta, TheoremCase::nonsingular),
                       false);
        }
}

void step_ii2(StepContext& ctx) {
    for (int n = 1; n <= 8; ++n)
        for (const auto& beta0 : ctx.betas) {
            const Scalar beta = scaled_beta(beta0, n);
            const CandidateResult r =
                q_candidate_result(n, FiberConfig::q1_singular, "q1", 1, 1, 1, {}, beta);
            ctx.record(beta, 1, 1, n, r.ratio, theorem_delta(n, beta, TheoremCase::singular),
                       false);
        }
    // Bound for the rest of the shallow family.
    const std::vector<std::pair<long, long>> pairs = {{2, 1}, {3, 2}};
    for (int n : kStepNs)
        for (const auto& beta0 : ctx.betas) {
            const Scalar beta = scaled_beta(beta0, n);
            for (const auto& [a, b] : pairs) {
                const Scalar engine =
                    q_candidate_s(n, FiberConfig::q1_singular, "q1", a, b, 1, {}, beta);
                const Scalar reference =
                    (Scalar(make_rat(a)) * beta_poly({0, 6, -2L * n + 7}, beta) +
                     Scalar(make_rat(b)) *
                         beta_poly({12, -6L * n + 24, 1L * n * n - 7 * n + 13}, beta)) /
                    (Scalar(3) * (Scalar(make_rat(4 - n)) * beta + Scalar(4)));
                ctx.record(beta, a, b, n, engine, reference, true);
            }
        }
}

void step_ii3(StepContext& ctx) {
    const std::vector<std::pair<long, long>> pairs = {{2, 1}, {3, 2}, {5, 3}};
    for (int n : kStepNs)
        for (const auto& beta0 : ctx.betas) {
            const Scalar beta = scaled_beta(beta0, n);
            for (const auto& [a, b] : pairs) {
                const Scalar engine =
                    q_candidate_s(n, FiberConfig::q1_singular, "q1", a, b, 1, {{"H1-E1", 2}}, beta);
                const Scalar reference =
                    (Scalar(make_rat(a)) *
                         beta_poly({12, -6L * n + 30, 1L * n * n - 10 * n + 23}, beta) +
                     Scalar(make_rat(b)) *
                         beta_poly({12, -6L * n + 30, 1L * n * n - 8 * n + 17}, beta)) /
                    (Scalar(6) * (Scalar(make_rat(4 - n)) * beta + Scalar(4)));
                ctx.record(beta, a, b, n, engine, reference, true);
            }
        }
}

void step_ii4(StepContext& ctx) {
    for (int n : kStepNs)
        for (const auto& beta0 : ctx.betas) {
            const Scalar beta = scaled_beta(beta0, n);
            {
                const long b = 1;
                const long a = regime_one_numerator(n, b, beta);
                const Scalar engine = q_candidate_s(n, FiberConfig::q1_singular, "q1", a, b,
                                                    static_cast<int>(a), {}, beta);
                ctx.record(beta, a, b, n, engine, nef_interval_bound(n, a, b, beta), true);
            }
            for (const auto& [a, b] : std::vector<std::pair<long, long>>{{2, 1}, {3, 1}, {5, 2}}) {
                const int k = static_cast<int>((a + b - 1) / b);
                const Scalar engine =
                    q_candidate_s(n, FiberConfig::q1_singular, "q1", a, b, k, {}, beta);
                ctx.record(beta, a, b, n, engine, mid_regime_bound(n, a, b, beta), true);
            }
        }
}

PiecewiseQuadratic expected_family(std::vector<std::pair<std::pair<Scalar, Scalar>, Polynomial>> parts) {
    std::vector<Scalar> breaks;
    std::vector<Polynomial> pieces;
    for (auto& [range, poly] : parts) {
        if (breaks.empty()) breaks.push_back(range.first);
        breaks.push_back(range.second);
        pieces.push_back(std::move(poly));
    }
    return PiecewiseQuadratic(std::move(breaks), std::move(pieces));
}

void record_family(StepContext& ctx, const Scalar& beta, long a, long b, int n,
                   const PiecewiseQuadratic& got, const PiecewiseQuadratic& expected,
                   const Scalar& lo, const Scalar& hi) {
    const bool ok = same_family_on(got, expected, lo, hi);
    ctx.record(beta, a, b, n, Scalar(ok ? 0 : 1), Scalar(0), false);
}

void step_vol_s7_2(StepContext& ctx) {
    const SurfaceModel x = preset_I9Bn(1, FiberConfig::neither);
    for (const auto& beta : ctx.betas) {
        const auto fam = volume_family(x, log_anticanonical(x, beta), x.curve("C"));
        // 3(b-x)^2 + 4(b-x) on [0, b]
        const Polynomial piece({beta_poly({0, 4, 3}, beta), -(Scalar(6) * beta + Scalar(4)), Scalar(3)});
        const auto expected = expected_family({{{Scalar(0), beta}, piece}});
        record_family(ctx, beta, 0, 0, 1, fam, expected, Scalar(0), beta);
    }
}

void dp7_node_family(StepContext& ctx, long a, long b, int j_c, const Scalar& beta,
                     const Scalar& hi) {
    const SurfaceModel x = preset_dP7_toric();
    const PointSpec point = dp7_node(x, "E1inf-E2inf");
    PltCandidate cand;
    cand.a = a;
    cand.b = b;
    cand.j_c = j_c;
    cand.center = point.name;
    cand.germs = point.germs;
    for (auto& g : cand.germs)
        if (g.curve == "C") g.j = j_c;
    const CandidateResult r = evaluate_candidate(x, cand, beta);

    const Scalar ab(make_rat(a * b));
    const Scalar two_a_beta = Scalar(make_rat(2 * a)) * beta;
    // L^2 - x^2/(ab), then + (x - 2 a beta)^2/(ab).
    const Polynomial nef({dp7_l2(beta), Scalar(0), Scalar(-1) / ab});
    const Polynomial second({dp7_l2(beta) + two_a_beta * two_a_beta / ab,
                             Scalar(-2) * two_a_beta / ab, Scalar(0)});
    const auto expected =
        expected_family({{{Scalar(0), two_a_beta}, nef}, {{two_a_beta, hi}, second}});
    record_family(ctx, beta, a, b, 1, *r.vol, expected, Scalar(0), hi);
}

void step_vol_s7_6(StepContext& ctx) {
    for (const auto& beta : ctx.betas)
        for (const auto& [a, b] : std::vector<std::pair<long, long>>{{2, 1}, {3, 2}})
            dp7_node_family(ctx, a, b, 1, beta, Scalar(make_rat(b)) * (beta + Scalar(1)));
}

void step_vol_s7_7(StepContext& ctx) {
    for (const auto& beta : ctx.betas)
        for (const auto& [a, b] : std::vector<std::pair<long, long>>{{3, 1}, {4, 1}, {5, 2}}) {
            const int k = static_cast<int>((a + b - 1) / b);
            dp7_node_family(ctx, a, b, k, beta,
                            Scalar(make_rat(a)) * beta + Scalar(make_rat(b)));
        }
}

void step_vol_i4(StepContext& ctx) {
    for (int n = 2; n <= 8; ++n)
        for (const auto& beta0 : ctx.betas) {
            const Scalar beta = scaled_beta(beta0, n);
            const CandidateResult r = q_candidate_result(n, FiberConfig::neither, "q1", 2, 1, 2,
                                                         {{"l_q1", 2}}, beta);
            const Scalar l2 = Scalar(make_rat(4 - n)) * beta * beta + Scalar(4) * beta;
            const Scalar w1 = Scalar(2) * beta;
            const Scalar w2 = Scalar(make_rat(4 - n)) * beta + Scalar(2);
            const Scalar tau = Scalar(2) * beta + Scalar(2);
            const Polynomial nef({l2, Scalar(0), Scalar(make_rat(-1, 2))});
            const Polynomial second({l2 + w1 * w1 / Scalar(2), -w1, Scalar(0)});
            std::vector<std::pair<std::pair<Scalar, Scalar>, Polynomial>> parts = {
                {{Scalar(0), w1}, nef}};
            if (n == 2) {
                parts.push_back({{w1, tau}, second});
            } else {
                const Scalar inv(make_rat(1, n - 2));
                const Polynomial last({tau * tau * inv, Scalar(-2) * tau * inv, inv});
                parts.push_back({{w1, w2}, second});
                parts.push_back({{w2, tau}, last});
            }
            const auto expected = expected_family(std::move(parts));
            record_family(ctx, beta, 2, 1, n, *r.vol, expected, Scalar(0), tau);
        }
}

void step_vol_ii2(StepContext& ctx) {
    for (int n = 1; n <= 8; ++n)
        for (const auto& beta0 : ctx.betas) {
            const Scalar beta = scaled_beta(beta0, n);
            const CandidateResult r =
                q_candidate_result(n, FiberConfig::q1_singular, "q1", 1, 1, 1, {}, beta);
            const Scalar l2 = Scalar(make_rat(4 - n)) * beta * beta + Scalar(4) * beta;
            const Scalar w2 = Scalar(make_rat(4 - n)) * beta + Scalar(2);
            const Scalar upper = beta + Scalar(2);
            const Polynomial nef({l2, Scalar(0), Scalar(-1)});
            const Polynomial second(
                {Scalar(make_rat(5 - n)) * beta * beta + Scalar(4) * beta, Scalar(-2) * beta,
                 Scalar(0)});
            std::vector<std::pair<std::pair<Scalar, Scalar>, Polynomial>> parts = {
                {{Scalar(0), beta}, nef}};
            Scalar hi = upper;
            if (n <= 3) {
                parts.push_back({{beta, upper}, second});
            } else {
                const Scalar inv(make_rat(1, n - 3));
                const Polynomial last({upper * upper * inv, Scalar(-2) * upper * inv, inv});
                parts.push_back({{beta, w2}, second});
                parts.push_back({{w2, upper}, last});
            }
            const auto expected = expected_family(std::move(parts));
            record_family(ctx, beta, 1, 1, n, *r.vol, expected, Scalar(0), hi);
        }
}

const std::vector<std::pair<std::string, std::pair<std::string, StepFn>>>& catalog() {
    static const std::vector<std::pair<std::string, std::pair<std::string, StepFn>>> entries = {
        {"S7:2", {"exact S of the boundary curve on the rank-3 model", step_s7_2}},
        {"S7:5a", {"toric S at (-a,-b) on the rank-3 model", step_s7_5a}},
        {"S7:5b", {"toric S at (-b,-a) on the rank-3 model", step_s7_5b}},
        {"S7:8a", {"toric S at (a,-b) on the rank-3 model", step_s7_8a}},
        {"S7:8b", {"toric S at (b,-a) on the rank-3 model", step_s7_8b}},
        {"I:2", {"smooth-fiber point, shallow chains: S upper bound", step_i2}},
        {"I:3", {"smooth-fiber point, steep chains: S upper bounds", step_i3}},
        {"I:4", {"smooth-fiber point minimizer (2,1): exact ratio", step_i4}},
        {"II:2", {"split-fiber point, shallow chains: exact minimizer and S bound", step_ii2}},
        {"II:3", {"split-fiber point, chain along a component: S upper bound", step_ii3}},
        {"II:4", {"split-fiber point, chain along the boundary: S upper bounds", step_ii4}},
        {"vol:S7:2", {"volume family of the boundary curve", step_vol_s7_2}},
        {"vol:S7:6", {"volume family at a node, shallow chain", step_vol_s7_6}},
        {"vol:S7:7", {"volume family at a node, chain along the boundary", step_vol_s7_7}},
        {"vol:I:4", {"volume family of the smooth-fiber minimizer", step_vol_i4}},
        {"vol:II:2", {"volume family of the split-fiber minimizer", step_vol_ii2}},
    };
    return entries;
}

}  // namespace

std::vector<std::string> step_catalog_ids() {
    std::vector<std::string> ids;
    for (const auto& [id, _] : catalog()) ids.push_back(id);
    return ids;
}

std::string StepReport::to_json() const {
    json j;
    j["step_id"] = step_id;
    j["description"] = description;
    j["kind"] = is_bound ? "bound" : "exact";
    j["pass"] = pass;
    json arr = json::array();
    for (const auto& s : samples)
        arr.push_back({{"beta", s.beta.str()},
                       {"a", s.a},
                       {"b", s.b},
                       {"n", s.n},
                       {"engine", s.engine.str()},
                       {"reference", s.reference.str()},
                       {"margin", s.margin.str()}});
    j["samples"] = arr;
    return j.dump(2);
}

StepReport verify_step_formula(const std::string& step_id, const std::vector<Scalar>& betas) {
    if (betas.empty()) throw precondition_error("verify_step_formula: no beta samples");
    for (const auto& b : betas)
        if (!(Scalar(0) < b && b < Scalar(make_rat(1, 7))))
            throw precondition_error("verify_step_formula: beta samples must lie in (0, 1/7)");
    for (const auto& [id, entry] : catalog()) {
        if (id != step_id) continue;
        StepContext ctx;
        ctx.betas = betas;
        ctx.report.step_id = id;
        ctx.report.description = entry.first;
        ctx.report.is_bound = id == "I:2" || id == "I:3" || id == "II:3" || id == "II:4";
        ctx.report.pass = true;
        entry.second(ctx);
        return ctx.report;
    }
    throw domain_error("unknown step id \"" + step_id + "\"");
}

}  // namespace logdelta
