#include "doctest.h"

#include <algorithm>

#include "rspin/mm.hpp"

using namespace rspin;

namespace {

RatPoly var(std::size_t n, std::size_t i) { return RatPoly::variable(n, i); }

}  // namespace

TEST_CASE("A_1")
{
    for (int N = 1; N <= 6; ++N) {
        const APoly a = a_polynomial(0, N);
        REQUIRE(a.coefficients.size() == 2);
        CHECK(a.coefficients[1] == 1);
        CHECK(a.coefficients[0] == make_rat(-(N - 1), 2));
    }
    const APoly a = a_polynomial(0, 2);
    CHECK(a(Rat(3)) + a(Rat(0)) == 2);
    CHECK(h_tuple(Partition({2}), 2) == std::vector<int>{3, 0});
}

TEST_CASE("A_{r+1} on the empty partition")
{
    for (int r = 1; r <= 5; ++r)
        for (int N = 1; N <= 6; ++N) {
            const APoly a = a_polynomial(r, N);
            CHECK(a.coefficients.size() == static_cast<std::size_t>(r + 2));
            Rat s = 0;
            for (int i = 1; i <= N; ++i) s += a(Rat(N - i));
            CHECK(s == 0);
            CHECK(a_identity_check(r, N, Partition()));
        }
}

TEST_CASE("A identity examples")
{
    CHECK(a_identity_check(2, 3, Partition({2, 1})));
    CHECK(a_identity_check(3, 4, Partition({4, 2, 1})));
    CHECK_THROWS_AS(a_identity_check(1, 2, Partition({1, 1, 1})), std::invalid_argument);
    CHECK_THROWS_AS(a_polynomial(1, 0), std::invalid_argument);
}

TEST_CASE("schur polynomials")
{
    const RatPoly v1 = var(2, 0), v2 = var(2, 1);
    CHECK(schur_poly(Partition({2}), 2) == v1 * v1 + v1 * v2 + v2 * v2);
    CHECK(schur_poly(Partition({1, 1}), 2) == v1 * v2);
    CHECK(schur_poly(Partition(), 3) == RatPoly::constant(3, 1));
    for (int N = 1; N <= 4; ++N) {
        RatPoly e1(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i) e1 += var(static_cast<std::size_t>(N), static_cast<std::size_t>(i));
        CHECK(schur_poly(Partition({1}), N) == e1);
    }
    const RatPoly s = schur_poly(Partition({3, 1}), 3);
    CHECK(s.is_symmetric());
    CHECK(s == frobenius_schur(Partition({3, 1}), 3));
}

TEST_CASE("character side")
{
    CHECK(z_coefficient_character(0, 1, 1, 3).value == std::map<int, RatPoly>{{0, RatPoly::constant(1, 1)}});
    // lambda = (1): p_3/3 = ((1/2)^3 + (1/2)^3)/3 = 1/12.
    const ZCoefficient z = z_coefficient_character(1, 2, 2, 6);
    const RatPoly e1 = var(2, 0) + var(2, 1);
    const Rat c = make_rat(1, 12);
    CHECK(z.value.size() == 4);
    CHECK(z.value.at(-1) == e1);
    CHECK(z.value.at(1) == e1 * c);
    CHECK(z.value.at(3) == e1 * (c * c / 2));
    CHECK(z.value.at(5) == e1 * (c * c * c / 6));
    // r = 1: p_2 of (1) vanishes.
    CHECK(z_coefficient_character(1, 2, 1, 3).value.size() == 1);
    CHECK_THROWS_AS(z_coefficient_character(2, 2, 1, 3), std::invalid_argument);
}

TEST_CASE("finite sum side")
{
    CHECK(z_coefficient_finite_sum(0, 1, 1, 1, 3).value == std::map<int, RatPoly>{{0, RatPoly::constant(1, 1)}});
    CHECK(z_coefficient_finite_sum(1, 2, 3, 1, 3) == z_coefficient_character(1, 2, 1, 3));
    CHECK(z_coefficient_finite_sum(2, 3, 4, 1, 3) == z_coefficient_character(2, 3, 1, 3));
    CHECK(vandermonde({2, 2, 0}) == 0);
    CHECK(alternant_quotient({2, 2, 0}).is_zero());
    CHECK(minimal_truncation(1, 2) == 2);
    CHECK(minimal_truncation(2, 4) == 4);
    CHECK_THROWS_AS(z_coefficient_finite_sum(1, 2, 1, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(z_coefficient_finite_sum(2, 2, 5, 1, 3), std::invalid_argument);
}

TEST_CASE("coefficient match with all partitions inside the window")
{
    for (int r = 1; r <= 2; ++r)
        for (int K = 0; K <= 3; ++K)
            for (int N = K + 1; N <= K + 2; ++N) {
                const MatrixModelCheck c = matrix_model_check(K, N, std::max(K + N - 1, minimal_truncation(K, N)), r, 3 * r);
                INFO("r=" << r << " K=" << K << " N=" << N << " " << c.first_mismatch);
                CHECK(c.holds);
            }
}

TEST_CASE("the window K + (N-1)/2 misses the partition (K) once N >= 4")
{
    const MatrixModelCheck c = matrix_model_check(2, 4, minimal_truncation(2, 4), 1, 3);
    CHECK_FALSE(c.holds);
    CHECK(c.first_mismatch == "g_s^-2 (1)*v1^2");
    CHECK(matrix_model_check(2, 3, minimal_truncation(2, 3), 1, 3).holds);
    const std::string json = matrix_model_report_json({c});
    CHECK(json.find("\"verdict\": \"fail\"") != std::string::npos);
}
