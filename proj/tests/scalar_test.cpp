#include <doctest.h>

#include <random>

#include "logdelta/scalar.hpp"

using namespace logdelta;

TEST_SUITE_BEGIN("scalar");

TEST_CASE("rational construction and formatting") {
    CHECK(rat_str(make_rat(6, -4)) == "-3/2");
    CHECK(rat_str(make_rat(5, 1)) == "5");
    CHECK(parse_rat("21/1000") == make_rat(21, 1000));
    CHECK(parse_rat("-7") == make_rat(-7));
    CHECK_THROWS_AS(parse_rat("1/0"), domain_error);
    CHECK_THROWS_AS(parse_rat("x/3"), domain_error);
    CHECK(Scalar::parse("43/44").str() == "43/44");
}

TEST_CASE("arithmetic is exact: (a+b)-b == a") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<long> num(-500, 500);
    std::uniform_int_distribution<long> den(1, 97);
    for (int i = 0; i < 200; ++i) {
        const Scalar a(make_rat(num(rng), den(rng)));
        const Scalar b(make_rat(num(rng), den(rng)));
        CHECK((a + b) - b == a);
        if (b.sign() != 0) CHECK((a / b) * b == a);
    }
}

TEST_CASE("radical normalization") {
    const Scalar r2 = Scalar::sqrt_of(make_rat(2));
    CHECK_FALSE(r2.is_rational());
    CHECK(r2.radicand() == 2);
    CHECK(Scalar::sqrt_of(make_rat(4, 9)) == Scalar(make_rat(2, 3)));
    // sqrt(8) = 2 sqrt(2), sqrt(45/4) = (3/2) sqrt(5)
    const Scalar r8 = Scalar::sqrt_of(make_rat(8));
    CHECK(r8.radicand() == 2);
    CHECK(r8.radical_q() == make_rat(2));
    const Scalar r45 = Scalar::sqrt_of(make_rat(45, 4));
    CHECK(r45.radicand() == 5);
    CHECK(r45.radical_q() == make_rat(3, 2));
    CHECK(r2 * r2 == Scalar(2));
    CHECK((Scalar(1) + r2) * (Scalar(1) - r2) == Scalar(-1));
    CHECK_THROWS_AS(Scalar::sqrt_of(make_rat(-1)), domain_error);
}

TEST_CASE("radical signs and comparisons") {
    const Scalar r2 = Scalar::sqrt_of(make_rat(2));
    CHECK((Scalar(3) - Scalar(2) * r2).sign() > 0);   // 3 > 2*1.414
    CHECK((Scalar(1) - r2).sign() < 0);
    CHECK(r2 > Scalar(make_rat(7, 5)));
    CHECK(r2 < Scalar(make_rat(3, 2)));
    CHECK(Scalar(1) / r2 == r2 / Scalar(2));
}

TEST_CASE("mixed quadratic extensions refuse to combine") {
    const Scalar r2 = Scalar::sqrt_of(make_rat(2));
    const Scalar r3 = Scalar::sqrt_of(make_rat(3));
    CHECK_THROWS_AS((void)(r2 + r3), domain_error);
    CHECK_THROWS_AS((void)(r2 * r3), domain_error);
    CHECK_NOTHROW((void)(r2 + Scalar(1)));
    CHECK_THROWS_AS((void)r2.rat(), domain_error);
}

TEST_SUITE_END();
