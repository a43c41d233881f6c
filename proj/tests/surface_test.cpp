#include <doctest.h>

#include "logdelta/surface.hpp"

using namespace logdelta;

TEST_SUITE_BEGIN("surface");

namespace {

Scalar q(long n, long d = 1) { return Scalar(make_rat(n, d)); }

// Characteristic polynomial by the Faddeev-LeVerrier recursion; the gram
// matrices here are symmetric, so all roots are real and Descartes' rule
// counts them exactly.
std::vector<Rat> char_poly(const std::vector<std::vector<Rat>>& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<Rat>> aux(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> coeffs(n + 1, Rat(0));
    coeffs[n] = 1;  // monic, highest degree first at index n
    std::vector<std::vector<Rat>> prod = aux;
    for (std::size_t k = 1; k <= n; ++k) {
        // prod = m * (aux + c_{n-k+1} I)
        std::vector<std::vector<Rat>> shifted = aux;
        for (std::size_t i = 0; i < n; ++i) shifted[i][i] += coeffs[n - k + 1];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rat acc(0);
                for (std::size_t l = 0; l < n; ++l) acc += m[i][l] * shifted[l][j];
                prod[i][j] = acc;
            }
        Rat trace(0);
        for (std::size_t i = 0; i < n; ++i) trace += prod[i][i];
        coeffs[n - k] = -trace / Rat(static_cast<long>(k));
        aux = prod;
    }
    return coeffs;  // coeffs[i] multiplies x^i
}

int descartes_sign_changes(const std::vector<Rat>& coeffs) {
    int changes = 0;
    int last = 0;
    for (const auto& c : coeffs) {
        const int s = sgn(c);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace

TEST_CASE("intersection numbers on the blown-up quadric") {
    const SurfaceModel x2 = preset_I9Bn(2, FiberConfig::q1_singular);
    const Scalar beta = q(1, 15);
    const DivisorClass l = log_anticanonical(x2, beta);
    CHECK(intersect(x2, l, x2.curve("C").cls) == q(32, 15));  // (4-n) beta + 2

    const SurfaceModel x1 = preset_I9Bn(1, FiberConfig::neither);
    const DivisorClass l1 = log_anticanonical(x1, q(1, 10));
    CHECK(intersect(x1, l1, l1) == q(43, 100));  // 3 beta^2 + 4 beta

    const DivisorClass h1 = x1.basis_class("H1");
    CHECK(intersect(x1, h1, h1) == Scalar(0));
    CHECK_THROWS_AS(x1.intersect(l, l), dimension_error);
}

TEST_CASE("preset (I.9B.n) basics") {
    for (int n = 1; n <= 8; ++n) {
        const SurfaceModel x = preset_I9Bn(n, n >= 2 ? FiberConfig::both_singular : FiberConfig::q1_singular);
        const DivisorClass c = x.curve("C").cls;
        CHECK(x.self_intersection(c) == make_rat(4 - n));
        CHECK(x.curve("C").negative_candidate == (n >= 5));
        const DivisorClass k = x.canonical_class();
        CHECK(x.self_intersection(k) == make_rat(8 - n));
        // L . E_i = beta
        const Scalar beta = q(1, 7L * n + 1);
        const DivisorClass l = log_anticanonical(x, beta);
        CHECK(intersect(x, l, x.curve("E1").cls) == beta);
    }
    CHECK(preset_I9Bn(1, FiberConfig::neither).self_intersection(
              preset_I9Bn(1, FiberConfig::neither).canonical_class()) == make_rat(7));
    CHECK_THROWS_AS(preset_I9Bn(1, FiberConfig::both_singular), precondition_error);
    CHECK_THROWS_AS(preset_I9Bn(0, FiberConfig::neither), precondition_error);
}

TEST_CASE("preset dP7 toric model") {
    const SurfaceModel x = preset_dP7_toric();
    CHECK(intersect(x, x.curve("E1").cls, x.curve("E2inf").cls) == Scalar(1));
    CHECK(x.self_intersection(x.curve("E").cls) == make_rat(-1));
    // C ~ E1 + 2 E2 + 2 E componentwise
    DivisorClass combo = x.curve("E1").cls;
    combo += make_rat(2) * x.curve("E2").cls;
    combo += make_rat(2) * x.curve("E").cls;
    CHECK(combo == x.curve("C").cls);
    CHECK(x.curve("E").ray.has_value());
}

TEST_CASE("preset ids") {
    CHECK(preset_by_id("dP7").id() == "dP7");
    CHECK(preset_by_id("I9B.3:q1-singular").id() == "I9B.3:q1-singular");
    CHECK(preset_by_id("I9B.2:both").id() == "I9B.2:both-singular");
    CHECK_THROWS_AS(preset_by_id("I9B.3"), domain_error);
    CHECK_THROWS_AS(preset_by_id("P2"), domain_error);
    CHECK(preset_by_id("dP7").to_json().find("gram") != std::string::npos);
}

TEST_CASE("log Fano window") {
    CHECK(log_fano_check(8, q(1, 60)));
    CHECK_FALSE(log_fano_check(8, q(3, 4)));
    for (long k = 2; k <= 12; ++k) CHECK(log_fano_check(1, q(1, k)));
    CHECK_FALSE(log_fano_check(1, q(3, 2)));
}

TEST_CASE("reduction factor toward fewer points") {
    CHECK(reduction_factor(2, 1, q(1, 10)) == q(43, 42));
    CHECK(reduction_factor(5, 5, q(1, 40)) == Scalar(1));
    CHECK(reduction_factor(6, 1, q(1, 42)) == q(171, 166));
    for (int n = 2; n <= 8; ++n)
        for (int np = 1; np <= n; ++np) CHECK(reduction_factor(n, np, q(1, 7L * n + 3)) >= Scalar(1));
    CHECK_THROWS_AS(reduction_factor(1, 2, q(1, 10)), precondition_error);
    CHECK_THROWS_AS(reduction_factor(8, 1, q(2, 3)), precondition_error);
}

TEST_CASE("intersection form signature is (1, n+1)") {
    for (int n = 1; n <= 6; ++n) {
        const SurfaceModel x = preset_I9Bn(n, FiberConfig::q1_singular);
        const auto poly = char_poly(x.gram());
        const int positive = descartes_sign_changes(poly);
        auto flipped = poly;
        for (std::size_t i = 1; i < flipped.size(); i += 2) flipped[i] = -flipped[i];
        const int negative = descartes_sign_changes(flipped);
        CHECK(positive == 1);
        CHECK(negative == n + 1);
    }
}

TEST_CASE("polarization is positive on the curve universe inside the log Fano window") {
    for (int n = 1; n <= 8; ++n) {
        const SurfaceModel x =
            preset_I9Bn(n, n >= 2 ? FiberConfig::both_singular : FiberConfig::q1_singular);
        for (long k = 1; k <= 3; ++k) {
            const Scalar beta = q(1, 7L * n + k);
            REQUIRE(log_fano_check(n, beta));
            const DivisorClass l = log_anticanonical(x, beta);
            for (const auto& curve : x.curves())
                CHECK(intersect(x, l, curve.cls).sign() > 0);
        }
    }
}

TEST_SUITE_END();
