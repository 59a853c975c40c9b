#include "doctest.h"

#include "rspin/bernoulli.hpp"
#include "rspin/cyclotomic.hpp"
#include "rspin/mpoly.hpp"
#include "rspin/series.hpp"

using namespace rspin;

TEST_CASE("bernoulli polynomial values")
{
    CHECK(bernoulli_poly(0, make_rat(3, 7)) == 1);
    CHECK(bernoulli_poly(1, 0) == make_rat(-1, 2));
    CHECK(bernoulli_poly(2, make_rat(1, 2)) == make_rat(-1, 12));
    CHECK(bernoulli_number(4) == make_rat(-1, 30));
    CHECK(bernoulli_number(12) == make_rat(-691, 2730));
    // B_2(v) = v^2 - v + 1/6
    const Rat v = make_rat(2, 5);
    CHECK(bernoulli_poly(2, v) == v * v - v + make_rat(1, 6));
}

TEST_CASE("bernoulli reflection")
{
    for (Rat v : {make_rat(0), make_rat(1, 3), make_rat(3, 4), make_rat(-5, 2)}) {
        for (unsigned j = 0; j <= 10; ++j) {
            const Rat sign = (j % 2 == 0) ? 1 : -1;
            CHECK(bernoulli_poly(j, 1 - v) == sign * bernoulli_poly(j, v));
        }
    }
}

TEST_CASE("lagrange inversion examples")
{
    const std::size_t order = 8;
    const RatSeries u = RatSeries::variable(order);
    CHECK(lagrange_invert(u) == u);

    const RatSeries t = lagrange_invert(u - u * u);
    // Catalan numbers
    const long catalan[] = {0, 1, 1, 2, 5, 14, 42, 132};
    for (std::size_t k = 0; k < order; ++k) CHECK(t[k] == catalan[k]);

    const RatSeries s = lagrange_invert(u - u * u * u);
    CHECK(s[1] == 1);
    CHECK(s[2] == 0);
    CHECK(s[3] == 1);
    CHECK(s[5] == 3);
    CHECK(s[7] == 12);
}

TEST_CASE("lagrange inversion rejects degenerate input")
{
    const RatSeries u = RatSeries::variable(5);
    CHECK_THROWS_AS(lagrange_invert(u * u), std::domain_error);
    CHECK_THROWS_AS(lagrange_invert(u + RatSeries::constant(1, 5)), std::domain_error);
}

TEST_CASE("series orders must match")
{
    CHECK_THROWS_AS(RatSeries(3) + RatSeries(4), std::invalid_argument);
    CHECK_THROWS_AS(RatSeries(3) * RatSeries(4), std::invalid_argument);
}

TEST_CASE("exp and log")
{
    const std::size_t order = 9;
    const RatSeries z = RatSeries::variable(order);
    const RatSeries e = exp(z);
    for (std::size_t k = 0; k < order; ++k) CHECK(e[k] == make_rat(BigInt(1), factorial(k)));
    const RatSeries f = RatSeries::constant(1, order) + z * make_rat(3, 2) - z * z * z * make_rat(2, 7);
    CHECK(exp(log(f)) == f);
    const RatSeries sq = pow(f, make_rat(1, 2));
    CHECK(sq * sq == f);
    CHECK(reciprocal(f) * f == RatSeries::constant(1, order));
}

TEST_CASE("cyclotomic arithmetic")
{
    const CycExt z = CycExt::zeta(4, 1);
    CHECK(z * CycExt::zeta(4, 3) == 1);
    CHECK((1 + z) * (1 - z) == 2);
    for (int r = 1; r <= 7; ++r) {
        const CycExt a = CycExt::alpha(r);
        CHECK(a * a == make_rat(-2, r));
        CHECK(CycExt::zeta(r, r) == 1);
        CycExt sum;
        for (int c = 0; c < r; ++c) sum += CycExt::zeta(r, c);
        CHECK(sum == (r == 1 ? 1 : 0));
    }
    CHECK_THROWS_AS(CycExt::zeta(3, 1) * CycExt::zeta(4, 1), std::invalid_argument);
}

TEST_CASE("cyclotomic inverse")
{
    const int r = 5;
    const CycExt x = CycExt::zeta(r, 1) * 3 + CycExt::zeta(r, 3) - 2 + CycExt::alpha(r) * CycExt::zeta(r, 2);
    CHECK(x * x.inverse() == 1);
    CHECK_THROWS_AS(CycExt::scalar(r, 0).inverse(), std::domain_error);
    // 1 - J is not a unit in Z[J] but is invertible over Q.
    const CycExt y = 1 - CycExt::zeta(r, 1);
    CHECK(y / y == 1);
}

TEST_CASE("schur-type exact division")
{
    const RatPoly v1 = RatPoly::variable(2, 0);
    const RatPoly v2 = RatPoly::variable(2, 1);
    const RatPoly cube = v1 * v1 * v1 - v2 * v2 * v2;
    const RatPoly q = cube.divide_by_difference(0, 1);
    CHECK(q == v1 * v1 + v1 * v2 + v2 * v2);
    CHECK(q.is_symmetric());
    CHECK_THROWS_AS((v1 * v1 + v2).divide_by_difference(0, 1), std::domain_error);
}

TEST_CASE("truncated log of a nilpotent polynomial")
{
    const RatPoly x = RatPoly::variable(1, 0);
    auto keep = [](const Exponent& e) { return e[0] < 6; };
    const RatPoly l = log1p_truncated(x, keep);
    CHECK(l.coeff({5}) == make_rat(1, 5));
    CHECK(l.coeff({4}) == make_rat(-1, 4));
    const RatPoly e = expm1_truncated(l, keep);
    CHECK(e == x);
}
