#include "doctest.h"

#include <algorithm>

#include "rspin/cohft.hpp"
#include "rspin/psi.hpp"
#include "rspin/stable_graph.hpp"

using namespace rspin;

TEST_CASE("stable graph counts")
{
    // Boundary strata of M_{0,4}: the open part and three boundary points.
    CHECK(stable_graphs(0, 4).size() == 4);
    // M_{1,1}: smooth genus 1 and the nodal rational curve.
    const auto& g11 = stable_graphs(1, 1);
    REQUIRE(g11.size() == 2);
    CHECK(g11[0].automorphisms == 1);
    CHECK(g11[1].automorphisms == 2);
    CHECK(stable_graphs(1, 2).size() == 5);
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {0, 5}, {1, 2}, {2, 1}, {1, 3}, {0, 6}})
        for (const auto& G : stable_graphs(g, n)) {
            CHECK(G.stable());
            CHECK(G.total_genus() == g);
            CHECK(static_cast<int>(G.leg_vertex.size()) == n);
        }
    CHECK_THROWS_AS(stable_graphs(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(stable_graphs(3, 2), std::out_of_range);
}

TEST_CASE("tqft and metric")
{
    for (int r = 2; r <= 6; ++r) {
        CHECK(tqft_value(r, 0, {0, 0, r - 2}) == make_rat(1, r));
        CHECK(tqft_value(r, 1, {0}) == r);
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b) {
                CHECK(metric(r, a, b) == metric(r, b, a));
                Rat s = 0;
                for (int c = 0; c < r; ++c) s += metric(r, a, c) * metric_inverse(r, c, b);
                CHECK(s == (a == b ? 1 : 0));
                // <e_a e_b e_c> with e_c = eta-dual: the product is e_{a+b}.
                CHECK(quantum_product(r, a, b) == (a + b) % r);
            }
    }
    CHECK(tqft_value(3, 0, {0, 0, 0}) == 0);
    CHECK_THROWS_AS(tqft_value(3, 0, {3}), std::invalid_argument);
}

TEST_CASE("idempotents")
{
    const int r = 3;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            // Coefficient of e_c in eps_i * eps_j.
            for (int c = 0; c < r; ++c) {
                CycExt s;
                for (int a = 0; a < r; ++a)
                    s += idempotent_coefficient(r, i, a) * idempotent_coefficient(r, j, (c - a + r) % r);
                CHECK(s == (i == j ? idempotent_coefficient(r, i, c) : CycExt()));
            }
        }
}

TEST_CASE("r-matrix")
{
    for (int r = 1; r <= 5; ++r)
        for (int a = 0; a < r; ++a) CHECK(r_matrix_coefficient(r, a, 0) == 1);
    CHECK(r_matrix_coefficient(2, 0, 1) == make_rat(1, 24));
    CHECK(r_matrix_coefficient(1, 0, 1) == make_rat(-1, 12));
    // Second coefficient is c_1^2/2 - B_3/6.
    const Rat c1 = make_rat(-1, 12);
    CHECK(r_matrix_coefficient(1, 0, 2) == c1 * c1 / 2);
    for (int r = 1; r <= 6; ++r) CHECK(symplectic_condition(r, 9));
}

TEST_CASE("degree zero part is the tqft")
{
    for (int r = 1; r <= 6; ++r)
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b)
                for (int c = 0; c < r; ++c)
                    CHECK(givental_correlator(r, 0, {{a, 0}, {b, 0}, {c, 0}}) == tqft_value(r, 0, {a, b, c}));
}

TEST_CASE("r = 1 is the inverse total Chern class of the Hodge bundle")
{
    // int psi_1 = int lambda_1 = 1/24 on M_{1,1}.
    CHECK(givental_correlator(1, 1, {{0, 1}}) == make_rat(1, 24));
    CHECK(givental_correlator(1, 1, {{0, 0}}) == make_rat(-1, 24));
    // int_{M_{1,2}} lambda_1 psi_2 = 1/24 against the degree-1 part -lambda_1.
    CHECK(givental_correlator(1, 1, {{0, 0}, {0, 1}}) == make_rat(-1, 24));
    // On M_{2,1}: lambda_1^2 = 2 lambda_2, so the degree-2 part lambda_1^2 - lambda_2
    // integrates like lambda_2: int lambda_2 psi^2 = 7/5760.
    CHECK(givental_correlator(1, 2, {{0, 2}}) == make_rat(7, 5760));
    // int lambda_1 psi^3 = 1/480.
    CHECK(givental_correlator(1, 2, {{0, 3}}) == make_rat(-1, 480));
    CHECK(givental_correlator(1, 2, {{0, 4}}) == make_rat(1, 1152));
}

TEST_CASE("permutation invariance")
{
    for (int r = 2; r <= 3; ++r) {
        const Rat x = givental_correlator(r, 1, {{0, 1}, {1, 0}});
        CHECK(x == givental_correlator(r, 1, {{1, 0}, {0, 1}}));
        const Rat y = givental_correlator(r, 0, {{0, 1}, {1, 0}, {r - 1, 0}, {0, 0}});
        CHECK(y == givental_correlator(r, 0, {{r - 1, 0}, {0, 0}, {1, 0}, {0, 1}}));
        CHECK(y == givental_correlator(r, 0, {{0, 0}, {r - 1, 0}, {0, 1}, {1, 0}}));
    }
}

TEST_CASE("f numbers")
{
    CHECK(f_number(Profile(0, 1, {1, 1, 1})) == 24);
    CHECK(f_number(Profile(1, 1, {1})) == 0);
    CHECK(f_number(Profile(0, 2, {1, 1, 1})) == connected_hurwitz(Profile(0, 2, {1, 1, 1})));
    CHECK_THROWS_AS(f_number(Profile(0, 1, {1, 1})), std::invalid_argument);
    CHECK_THROWS_AS(f_number(Profile(0, 2, {1, 1, 2})), std::domain_error);
}

TEST_CASE("F coefficients")
{
    CHECK(F_coefficient(Profile(1, 1, {1})) == 0);
    CHECK(F_coefficient(Profile(0, 1, {1, 1, 1})) == 1);
    for (const auto& k : std::vector<std::vector<int>>{{1, 1, 2}, {2, 2, 1}, {3, 1, 1}, {2, 3, 4}}) {
        const Profile p(0, 3, k);
        if (!p.valid()) continue;
        CHECK(F_coefficient(p) == f_number(p) / Rat(factorial(static_cast<unsigned long>(p.m()))));
    }
}

TEST_CASE("correlator table export")
{
    const CorrelatorTable t = CorrelatorTable::build(2, 0, 3);
    CHECK(t.entries.size() == 4);
    CHECK(t.to_json().find("\"pairs\":[[0,0],[0,0],[0,0]]") != std::string::npos);
}
