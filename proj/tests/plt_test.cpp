#include <doctest.h>

#include <functional>
#include <numeric>
#include <random>

#include "logdelta/plt.hpp"

using namespace logdelta;

TEST_SUITE_BEGIN("plt");

namespace {

Scalar q(long n, long d = 1) { return Scalar(make_rat(n, d)); }

// All realizable branch data with m blowups: q(i) continues at q(i-1) or
// jumps to i-2.
void enumerate_branches(int max_m, const std::function<void(const BranchData&)>& fn) {
    std::vector<BranchData> stack{BranchData{1, {}}};
    while (!stack.empty()) {
        BranchData cur = stack.back();
        stack.pop_back();
        fn(cur);
        if (cur.m >= max_m) continue;
        const int next = cur.m + 1;
        const int stay = next == 2 ? 0 : cur.q.at(cur.m);
        for (int value : {stay, next - 2}) {
            BranchData ext = cur;
            ext.m = next;
            ext.q[next] = value;
            stack.push_back(std::move(ext));
            if (stay == next - 2) break;  // the two choices coincide
        }
    }
}

// Coprime (a, b) with a >= b >= 1 and a + b <= cap.
std::vector<std::pair<long, long>> coprime_pairs(long cap) {
    std::vector<std::pair<long, long>> out;
    for (long s = 2; s <= cap; ++s)
        for (long b = 1; 2 * b <= s; ++b)
            if (std::gcd(s - b, b) == 1) out.emplace_back(s - b, b);
    return out;
}

}  // namespace

TEST_CASE("weight recursion on small chains") {
    {
        const AbSequence seq = ab_sequence(BranchData{2, {{2, 0}}});
        CHECK(seq.pairs == std::vector<std::pair<long, long>>{{1, 0}, {1, 1}, {2, 1}});
        CHECK(seq.a == 2);
        CHECK(seq.b == 1);
        CHECK(seq.k == 2);
    }
    {
        const AbSequence seq = ab_sequence(BranchData{3, {{2, 0}, {3, 1}}});
        CHECK(seq.a == 3);
        CHECK(seq.b == 2);
        CHECK(seq.k == 2);
    }
    {
        const AbSequence seq = ab_sequence(BranchData{3, {{2, 0}, {3, 0}}});
        CHECK(seq.a == 3);
        CHECK(seq.b == 1);
        CHECK(seq.k == 3);
    }
    CHECK_THROWS_AS(ab_sequence(BranchData{3, {{2, 0}}}), precondition_error);
    CHECK_THROWS_AS(ab_sequence(BranchData{2, {{2, 5}}}), precondition_error);
}

TEST_CASE("weights are coprime and k = ceil(a/b), exhaustively to m = 7") {
    int count = 0;
    enumerate_branches(7, [&](const BranchData& branch) {
        const AbSequence seq = ab_sequence(branch);
        for (std::size_t i = 1; i < seq.pairs.size(); ++i)
            CHECK(std::gcd(seq.pairs[i].first, seq.pairs[i].second) == 1);
        CHECK(seq.k == static_cast<int>((seq.a + seq.b - 1) / seq.b));
        ++count;
    });
    CHECK(count == 64);  // 1 + sum_{m=2}^{7} 2^(m-2)
    // A center off both nodes of the newest curve is not realizable.
    CHECK_THROWS_AS(ab_sequence(BranchData{4, {{2, 0}, {3, 0}, {4, 1}}}), precondition_error);
}

TEST_CASE("log discrepancy closed forms") {
    CHECK(log_discrepancy(2, 1, 2, q(1, 10)) == q(6, 5));   // a beta + b at the full chain
    CHECK(log_discrepancy(1, 1, 1, q(1, 10)) == q(11, 10)); // b beta + a off the chain
    CHECK(log_discrepancy(5, 3, 0, q(1, 10)) == Scalar(8)); // center off the boundary
    CHECK(log_discrepancy(5, 3, 1, Scalar(1)) == Scalar(8));
    for (const auto& [a, b] : coprime_pairs(12)) {
        const Scalar beta = q(1, 11);
        const int k = static_cast<int>((a + b - 1) / b);
        CHECK(log_discrepancy(a, b, 1, beta) ==
              Scalar(make_rat(a)) + Scalar(make_rat(b)) * beta);
        CHECK(log_discrepancy(a, b, k, beta) ==
              Scalar(make_rat(b)) + Scalar(make_rat(a)) * beta);
    }
    CHECK_THROWS_AS(log_discrepancy(4, 2, 1, q(1, 10)), precondition_error);
    CHECK_THROWS_AS(log_discrepancy(2, 1, 3, q(1, 10)), precondition_error);
}

TEST_CASE("germ multiplicities") {
    CHECK(germ_multiplicity(1, 2, 1) == 1);
    CHECK(germ_multiplicity(2, 2, 1) == 2);
    CHECK(germ_multiplicity(2, 3, 1) == 2);
    CHECK(germ_multiplicity(5, 3, 2) == 3);  // saturates at a
}

TEST_CASE("extraction lattice reproduces the stated intersection numbers") {
    const Scalar beta = q(1, 30);
    for (int n : {3, 4, 6}) {
        // Boundary chain of the smooth-fiber minimizer.
        const SurfaceModel x = preset_I9Bn(n, FiberConfig::neither);
        PltCandidate cand;
        cand.a = 2;
        cand.b = 1;
        cand.j_c = 2;
        cand.center = "q1";
        cand.germs = {{"C", 2, 1}, {"l_q1", 2, 2}, {"g_q1", 1, 1}};
        const SurfaceModel y = extract_model(x, cand);
        const auto& c = y.curve("C").cls;
        const auto& f = y.curve("F").cls;
        CHECK(y.self_intersection(f) == make_rat(-1, 2));
        CHECK(y.self_intersection(c) == make_rat(2 - n));
        CHECK(y.intersect(c, f) == make_rat(1));
        CHECK(y.intersect(y.curve("l_q1").cls, y.curve("C").cls) == 0);
        CHECK(y.self_intersection(y.curve("l_q1").cls) == make_rat(-2));
    }
    {
        // Split-fiber minimizer: component strict transforms go to -2 and
        // become disjoint.
        const SurfaceModel x = preset_I9Bn(2, FiberConfig::q1_singular);
        PltCandidate cand;
        cand.a = 1;
        cand.b = 1;
        cand.j_c = 1;
        cand.center = "q1";
        cand.germs = {{"C", 1, 1}, {"H1-E1", 1, 1}, {"E1", 1, 1}};
        const SurfaceModel y = extract_model(x, cand);
        CHECK(y.self_intersection(y.curve("H1-E1").cls) == make_rat(-2));
        CHECK(y.self_intersection(y.curve("E1").cls) == make_rat(-2));
        CHECK(y.intersect(y.curve("H1-E1").cls, y.curve("E1").cls) == 0);
        CHECK(y.self_intersection(y.curve("F").cls) == make_rat(-1));
        // Pullback of the polarization pairs to zero with F.
        const DivisorClass l = pullback_to_extraction(y, log_anticanonical(x, beta));
        CHECK(y.intersect(l, y.curve("F").cls) == 0);
    }
}

TEST_CASE("strict transforms against the chain: (B^Y.F) and the self-intersection drop") {
    // Exhaustive over coprime a+b <= 12 and every admissible j_B, on a germ
    // through a general point of the boundary-free locus.
    const SurfaceModel base = preset_I9Bn(1, FiberConfig::neither);
    const SurfaceModel x =
        base.with_curve(CurveRecord{"B", base.basis_class("H2"), false, {{"p", 1}}, std::nullopt});
    for (const auto& [a, b] : coprime_pairs(12)) {
        const int k = static_cast<int>((a + b - 1) / b);
        for (int j = 1; j <= k; ++j) {
            PltCandidate cand;
            cand.a = a;
            cand.b = b;
            cand.j_c = 0;
            cand.center = "p";
            cand.germs = {{"B", j, 1}};
            const SurfaceModel y = extract_model(x, cand);
            const Rat ab = make_rat(a) * make_rat(b);
            const Rat pairing = y.intersect(y.curve("B").cls, y.curve("F").cls);
            const Rat drop =
                x.self_intersection(x.curve("B").cls) - y.self_intersection(y.curve("B").cls);
            if (j < k) {
                CHECK(pairing == make_rat(j, a));
                CHECK(drop == make_rat(1L * j * j * b, a));
            } else {
                CHECK(pairing == make_rat(1, b));
                CHECK(drop == make_rat(a, b));
            }
        }
    }
}

TEST_CASE("extraction preserves pair intersections away from the chain") {
    std::mt19937 rng(4242);
    const SurfaceModel x = preset_I9Bn(3, FiberConfig::q1_singular);
    const auto pairs = coprime_pairs(9);
    std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
    for (int trial = 0; trial < 30; ++trial) {
        const auto [a, b] = pairs[pick(rng)];
        PltCandidate cand;
        cand.a = a;
        cand.b = b;
        cand.j_c = 1;
        cand.center = "q1";
        cand.germs = {{"C", 1, 1}, {"H1-E1", 1, 1}, {"E1", 1, 1}};
        const SurfaceModel y = extract_model(x, cand);
        const Rat ab = make_rat(a) * make_rat(b);
        for (const char* left : {"C", "H1-E1", "E1", "H2-E2"}) {
            for (const char* right : {"E2", "H1-E2", "H2-E1"}) {
                const Rat mu_left =
                    std::string(left) == "H2-E2" ? Rat(0) : make_rat(germ_multiplicity(1, a, b));
                const Rat mu_right = 0;  // right-hand curves avoid the center
                const Rat got = y.intersect(y.curve(left).cls, y.curve(right).cls);
                const Rat want = x.intersect(x.curve(left).cls, x.curve(right).cls) -
                                 mu_left * mu_right / ab;
                CHECK(got == want);
            }
        }
    }
}

TEST_CASE("chain-type filter") {
    const Scalar beta = q(1, 10);
    auto candidate = [](long a, long b, int j_c, std::vector<CurveGerm> germs) {
        PltCandidate cand;
        cand.a = a;
        cand.b = b;
        cand.j_c = j_c;
        cand.center = "q1";
        cand.germs = std::move(germs);
        return cand;
    };
    // j_C must be 1 or k.
    CHECK_FALSE(plt_filter(candidate(4, 1, 2, {{"C", 2, 1}}), beta));
    CHECK(plt_filter(candidate(4, 1, 1, {{"C", 1, 1}}), beta));
    CHECK(plt_filter(candidate(4, 1, 4, {{"C", 4, 1}}), beta));
    // Two transversal germs cannot both continue.
    CHECK_FALSE(plt_filter(candidate(3, 1, 2, {{"C", 2, 1}, {"E1", 2, 1}}), beta));
    // A tangent germ must continue exactly when the boundary does.
    CHECK_FALSE(plt_filter(candidate(3, 1, 3, {{"C", 3, 1}, {"l_q1", 1, 2}}), beta));
    CHECK(plt_filter(candidate(3, 1, 3, {{"C", 3, 1}, {"l_q1", 2, 2}}), beta));
    CHECK_FALSE(plt_filter(candidate(4, 1, 4, {{"C", 4, 1}, {"l_q1", 3, 2}}), beta));
    CHECK_THROWS_AS(plt_filter(candidate(2, 1, 1, {{"C", 1, 1}}), Scalar(make_rat(3, 4))),
                    precondition_error);
}

TEST_CASE("candidate json") {
    PltCandidate cand;
    cand.a = 2;
    cand.b = 1;
    cand.j_c = 2;
    cand.center = "q1";
    cand.germs = {{"C", 2, 1}, {"l_q1", 2, 2}};
    const std::string j = cand.to_json();
    CHECK(j.find("\"a\":2") != std::string::npos);
    CHECK(j.find("\"center\":\"q1\"") != std::string::npos);
    CHECK(j.find("l_q1") != std::string::npos);
}

TEST_SUITE_END();
