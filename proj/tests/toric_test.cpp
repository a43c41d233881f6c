#include <doctest.h>

#include "logdelta/polynomial.hpp"
#include "logdelta/toric.hpp"

using namespace logdelta;

TEST_SUITE_BEGIN("toric");

namespace {

Scalar q(long n, long d = 1) { return Scalar(make_rat(n, d)); }

TorusDivisor dp7_divisor(const Scalar& beta) {
    return TorusDivisor{{beta + Scalar(1), Scalar(2) * beta + Scalar(1), Scalar(2) * beta,
                         Scalar(0), Scalar(0)}};
}

TorusDivisor hexagon_divisor(const Scalar& beta) {
    return TorusDivisor{{beta + Scalar(1), beta + Scalar(1), beta, Scalar(0), Scalar(0), beta}};
}

std::vector<Scalar> beta_samples(int count) {
    std::vector<Scalar> betas;
    for (int i = 0; i < count; ++i) betas.push_back(q(1, 8 + i));
    return betas;
}

bool has_vertex(const Polytope& p, const Scalar& x, const Scalar& y) {
    for (const auto& v : p.vertices)
        if (v[0] == x && v[1] == y) return true;
    return false;
}

}  // namespace

TEST_CASE("fan validation") {
    CHECK_NOTHROW(dp7_fan().validate());
    CHECK_NOTHROW(square_fan().validate());
    CHECK_NOTHROW(hexagon_fan().validate());
    CHECK(dp7_fan().to_json() == "[[1,0],[1,1],[0,1],[-1,0],[0,-1]]");
    Fan scaled{{{2, 0}, {0, 1}, {-1, 0}, {0, -1}}};
    CHECK_THROWS_AS(scaled.validate(), precondition_error);
    Fan nonsmooth{{{1, 0}, {-1, 2}, {0, -1}}};
    CHECK_THROWS_AS(nonsmooth.validate(), precondition_error);
}

TEST_CASE("polytopes from ample divisors") {
    // Square fan with all coefficients 1: the square [-1, 1]^2.
    const Polytope square = polytope(square_fan(), TorusDivisor{{Scalar(1), Scalar(1), Scalar(1), Scalar(1)}});
    CHECK(square.vertices.size() == 4);
    CHECK(has_vertex(square, Scalar(1), Scalar(1)));
    CHECK(has_vertex(square, Scalar(-1), Scalar(-1)));
    CHECK(square.area() == Scalar(4));

    const Scalar beta = q(1, 10);
    const Polytope p = polytope(dp7_fan(), dp7_divisor(beta));
    CHECK(p.vertices.size() == 5);
    CHECK(has_vertex(p, Scalar(0), Scalar(0)));
    CHECK(has_vertex(p, -beta - Scalar(1), -beta));
    CHECK(has_vertex(p, Scalar(-1), Scalar(-2) * beta));
    // Facet <m,(1,1)> >= -2 beta - 1 is active: two vertices meet it.
    int on_facet = 0;
    for (const auto& v : p.vertices)
        if (v[0] + v[1] == -Scalar(2) * beta - Scalar(1)) ++on_facet;
    CHECK(on_facet == 2);
    // Area doubles to L^2 = 3 beta^2 + 4 beta.
    CHECK(Scalar(2) * p.area() == Scalar(3) * beta * beta + Scalar(4) * beta);

    // beta = 0 degenerates the model.
    CHECK_THROWS_AS(polytope(dp7_fan(), dp7_divisor(Scalar(0))), degenerate_error);
}

TEST_CASE("barycenters") {
    Polytope triangle{{{Scalar(0), Scalar(0)}, {Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}}};
    CHECK(barycenter(triangle)[0] == q(1, 3));
    CHECK(barycenter(triangle)[1] == q(1, 3));

    Polytope unit_square{{{Scalar(0), Scalar(0)},
                          {Scalar(1), Scalar(0)},
                          {Scalar(1), Scalar(1)},
                          {Scalar(0), Scalar(1)}}};
    CHECK(barycenter(unit_square)[0] == q(1, 2));
    CHECK(barycenter(unit_square)[1] == q(1, 2));

    // Closed form for the pentagon barycenter, checked at 12 samples.
    for (const auto& beta : beta_samples(12)) {
        const auto bc = barycenter(polytope(dp7_fan(), dp7_divisor(beta)));
        const Scalar den = Scalar(3) * (Scalar(3) * beta + Scalar(4));
        const Scalar want_x =
            -(Scalar(4) * beta * beta + Scalar(9) * beta + Scalar(6)) / den;
        const Scalar want_y = -(Scalar(7) * beta * beta + Scalar(12) * beta) / den;
        CHECK(bc[0] == want_x);
        CHECK(bc[1] == want_y);
        // Interior point: strict inequalities against every facet.
        const Fan fan = dp7_fan();
        const TorusDivisor d = dp7_divisor(beta);
        for (std::size_t i = 0; i < fan.size(); ++i) {
            const Scalar pairing =
                bc[0] * Scalar(fan.rays[i][0]) + bc[1] * Scalar(fan.rays[i][1]);
            CHECK(pairing > -d.coeffs[i]);
        }
    }
    CHECK(barycenter(polytope(dp7_fan(), dp7_divisor(q(1, 10))))[0] == q(-347, 645));
    CHECK(barycenter(polytope(dp7_fan(), dp7_divisor(q(1, 10))))[1] == q(-127, 1290));
}

TEST_CASE("toric S values") {
    const Scalar beta = q(1, 10);
    const Fan fan = dp7_fan();
    const TorusDivisor d = dp7_divisor(beta);
    // v = (-1,-1): (11 b^2 + 21 b + 6)/(3(3b+4)), frozen at beta = 1/10.
    CHECK(toric_s(fan, d, {-1, -1}) == q(821, 1290));
    // v = (1,-2): the (b,-a) = (1,-2) closed form at (a,b) = (2,1).
    const Scalar expect =
        (Scalar(2) * (Scalar(7) * beta * beta + Scalar(12) * beta) -
         (Scalar(4) * beta * beta + Scalar(9) * beta + Scalar(6))) /
            (Scalar(3) * (Scalar(3) * beta + Scalar(4))) +
        beta + Scalar(1);
    CHECK(toric_s(fan, d, {1, -2}) == expect);
    // The exceptional ray itself.
    CHECK(toric_s(fan, d, {1, 1}) ==
          (Scalar(7) * beta * beta + Scalar(12) * beta + Scalar(6)) /
              (Scalar(3) * (Scalar(3) * beta + Scalar(4))));

    // Split-fiber model with n = 2: S((2,1)) = beta + 1, barycenter (-(b+1)/2, 0).
    for (const auto& b : beta_samples(6)) {
        CHECK(toric_s(hexagon_fan(), hexagon_divisor(b), {2, 1}) == b + Scalar(1));
        const auto bc = barycenter(polytope(hexagon_fan(), hexagon_divisor(b)));
        CHECK(bc[0] == -(b + Scalar(1)) / Scalar(2));
        CHECK(bc[1] == Scalar(0));
    }

    // S is positive on every nonzero vector.
    for (long vx = -4; vx <= 4; ++vx)
        for (long vy = -4; vy <= 4; ++vy) {
            if (vx == 0 && vy == 0) continue;
            CHECK(toric_s(fan, d, {vx, vy}).sign() > 0);
        }

    // Translation invariance: adding <m0, v_i> to the coefficients moves the
    // polytope without changing S.
    const LatticeVector m0{3, -2};
    TorusDivisor shifted = d;
    const Fan f2 = dp7_fan();
    for (std::size_t i = 0; i < f2.size(); ++i)
        shifted.coeffs[i] += Scalar(m0[0] * f2.rays[i][0] + m0[1] * f2.rays[i][1]);
    for (long vx = -3; vx <= 3; ++vx)
        for (long vy = -3; vy <= 3; ++vy) {
            if (vx == 0 && vy == 0) continue;
            CHECK(toric_s(f2, shifted, {vx, vy}) == toric_s(f2, d, {vx, vy}));
        }
}

TEST_CASE("closed forms for S on the node cones hold as identities in beta") {
    // At (a,b) = (3,2): four vectors, four closed forms, certified by
    // identity testing over 12 samples with degree bound 4.
    const long a = 3, b = 2;
    struct Form {
        LatticeVector v;
        Polynomial num;
        Polynomial den;
    };
    const Polynomial den({Scalar(12), Scalar(9)});  // 3(3b+4)
    auto mix = [&](long ca_const, long ca_lin, long ca_quad, long cb_const, long cb_lin,
                   long cb_quad) {
        return Polynomial({Scalar(make_rat(a * ca_const + b * cb_const)),
                           Scalar(make_rat(a * ca_lin + b * cb_lin)),
                           Scalar(make_rat(a * ca_quad + b * cb_quad))});
    };
    std::vector<Form> forms;
    forms.push_back({{-a, -b}, mix(6, 9, 4, 0, 12, 7), den});
    forms.push_back({{-b, -a}, mix(0, 12, 7, 6, 9, 4), den});
    {
        // (a,-b): ( -a(4b^2+9b+6) + b(7b^2+12b) )/(3(3b+4)) + a(b+1)
        Polynomial num = mix(-6, -9, -4, 0, 12, 7);
        num += Polynomial({Scalar(make_rat(12 * a)), Scalar(make_rat(a * (9 + 12))),
                           Scalar(make_rat(9 * a))});  // a(b+1) * 3(3b+4)
        forms.push_back({{a, -b}, num, den});
    }
    {
        Polynomial num = mix(0, 12, 7, -6, -9, -4);
        num += Polynomial({Scalar(make_rat(12 * b)), Scalar(make_rat(b * 21)),
                           Scalar(make_rat(9 * b))});
        forms.push_back({{b, -a}, num, den});
    }
    for (const auto& form : forms) {
        std::vector<std::pair<Scalar, Scalar>> samples;
        for (const auto& beta : beta_samples(12))
            samples.emplace_back(beta, toric_s(dp7_fan(), dp7_divisor(beta), form.v));
        CHECK(verify_identity(samples, form.num, form.den, 4));
    }
}

TEST_CASE("toric log discrepancies") {
    const Fan fan = dp7_fan();
    CHECK(toric_a0(fan, {1, 0}) == Scalar(1));
    CHECK(toric_a0(fan, {1, 1}) == Scalar(1));
    CHECK(toric_a0(fan, {-2, -1}) == Scalar(3));
    CHECK(toric_a0(fan, {2, 1}) == Scalar(2));  // (2,1) = (1,0) + (1,1)
    CHECK(toric_a0(fan, {-1, 3}) == Scalar(4)); // (-1,3) = 3(0,1) + 1(-1,0)
    CHECK_THROWS_AS(toric_a0(fan, {0, 0}), precondition_error);
}

TEST_CASE("delta scan on the degree-seven model") {
    const Fan fan = dp7_fan();
    for (const auto& beta : beta_samples(4)) {
        const ScanResult scan = toric_delta_scan(fan, dp7_divisor(beta), {}, 12);
        CHECK(scan.argmin == LatticeVector{1, 1});
        const Scalar want = Scalar(3) * (Scalar(3) * beta + Scalar(4)) /
                            (Scalar(7) * beta * beta + Scalar(12) * beta + Scalar(6));
        CHECK(scan.min_ratio == want);
    }
    // Enlarging the box does not change the minimum.
    const Scalar beta = q(1, 10);
    const ScanResult wide = toric_delta_scan(fan, dp7_divisor(beta), {}, 24);
    CHECK(wide.argmin == LatticeVector{1, 1});
    CHECK(wide.min_ratio == q(1290, 727));
    CHECK(wide.to_json().find("argmin") != std::string::npos);
}

TEST_CASE("delta scan on the unit square") {
    const Fan fan = square_fan();
    const TorusDivisor unit{{Scalar(0), Scalar(0), Scalar(1), Scalar(1)}};  // [0,1]^2
    const ScanResult scan = toric_delta_scan(fan, unit, {}, 6);
    CHECK(scan.min_ratio == Scalar(2));
    CHECK(toric_s(fan, unit, {1, 0}) == q(1, 2));
}

TEST_CASE("boundary coefficients shift the scan") {
    const Fan fan = square_fan();
    const TorusDivisor unit{{Scalar(0), Scalar(0), Scalar(1), Scalar(1)}};
    // Boundary along one ray divisor lowers A there.
    const std::vector<Scalar> delta_coeffs = {q(1, 2), Scalar(0), Scalar(0), Scalar(0)};
    const ScanResult scan = toric_delta_scan(fan, unit, delta_coeffs, 6);
    CHECK(scan.argmin == LatticeVector{1, 0});
    CHECK(scan.min_ratio == Scalar(1));  // (1 - 1/2) / (1/2)
}

TEST_SUITE_END();
