#include "doctest.h"

#include "rspin/hurwitz.hpp"

using namespace rspin;

TEST_CASE("profile bookkeeping")
{
    const Profile p(1, 3, {5, 3, 1});
    CHECK(p.K() == 9);
    CHECK(p.valid());
    CHECK(p.m() == 4);
    // k = r p + (r - 1 - a)
    for (int i = 0; i < p.n(); ++i) CHECK(p.k[i] == p.r * p.p(i) + (p.r - 1 - p.a(i)));
    CHECK(p.a(0) == 0);
    CHECK(p.p(0) == 1);
    CHECK(p.a(2) == 1);
    CHECK_FALSE(Profile(0, 2, {2}).valid());
    CHECK_THROWS_AS(Profile(0, 2, {2}).m(), std::domain_error);
    CHECK_THROWS_AS(Profile(-1, 2, {2}), std::invalid_argument);
    CHECK_THROWS_AS(Profile(0, 2, {}), std::invalid_argument);
}

TEST_CASE("disconnected coefficients")
{
    for (int r = 1; r <= 4; ++r) CHECK(disconnected_coefficient(r, Partition({1}), 0) == 1);
    CHECK(disconnected_coefficient(1, Partition({2}), 1) == make_rat(1, 2));
    CHECK(disconnected_coefficient(1, Partition({1, 1}), 0) == make_rat(1, 2));
}

TEST_CASE("connected hurwitz examples")
{
    for (int r = 1; r <= 4; ++r) CHECK(connected_hurwitz(Profile(0, r, {1})) == 1);
    CHECK(connected_hurwitz(Profile(0, 1, {2})) == make_rat(1, 2));
    CHECK(connected_hurwitz(Profile(1, 1, {1})) == 0);
    const auto invalid = connected_hurwitz_checked(Profile(0, 2, {2}));
    CHECK_FALSE(invalid.valid_profile);
    CHECK(invalid.value == 0);
}

TEST_CASE("classical simple hurwitz numbers")
{
    // 27 four-tuples of transpositions in S_3 multiply to 1 (character count);
    // the 3 constant tuples are intransitive, leaving 24.
    CHECK(connected_hurwitz(Profile(0, 1, {1, 1, 1})) == 24);
    // Two transpositions with product a given 3-cycle: 3 ways, times the two
    // 3-cycles, over 3!.
    CHECK(connected_hurwitz(Profile(0, 1, {3})) == 1);
    // A d-cycle has d^{d-2} minimal transposition factorizations, so the
    // one-part genus-0 number is (d-1)! d^{d-2} / d! = d^{d-3}.
    CHECK(connected_hurwitz(Profile(0, 1, {4})) == 4);
    CHECK(connected_hurwitz(Profile(0, 1, {5})) == 25);
    CHECK(connected_hurwitz(Profile(0, 1, {6})) == 216);
}

TEST_CASE("oracle examples")
{
    // With labeled poles the two identical parts contribute 2!; the unlabeled
    // count of the single factorization (12)(12) over 2! is 1/2.
    const Profile p11(0, 1, {1, 1});
    CHECK(brute_force_hurwitz(p11) == 1);
    CHECK(brute_force_hurwitz(p11) / Rat(p11.cycle_type().automorphism_order()) == make_rat(1, 2));
    CHECK(brute_force_hurwitz(Profile(0, 1, {2})) == make_rat(1, 2));
    const Profile p3(0, 2, {3});
    CHECK(brute_force_hurwitz(p3) == connected_hurwitz(p3));
    CHECK_THROWS_AS(brute_force_hurwitz(Profile(0, 1, {6})), std::out_of_range);
    CHECK_THROWS_AS(brute_force_hurwitz(Profile(2, 1, {1})), std::out_of_range);
}

TEST_CASE("oracle agreement on small profiles")
{
    int checked = 0;
    for (int r = 1; r <= 3; ++r)
        for (int g = 0; g <= 2; ++g)
            for (const std::vector<int>& k : std::vector<std::vector<int>>{{1}, {2}, {3}, {1, 1}, {2, 1}, {1, 2}, {1, 1, 1}, {4}, {2, 2}, {3, 1}}) {
                const Profile p(g, r, k);
                if (!p.valid() || p.m() > 3) continue;
                CHECK_MESSAGE(brute_force_hurwitz(p) == connected_hurwitz(p), p.str());
                ++checked;
            }
    CHECK(checked > 20);
}

TEST_CASE("symmetry in the parts")
{
    CHECK(connected_hurwitz(Profile(0, 2, {3, 2, 1})) == connected_hurwitz(Profile(0, 2, {1, 3, 2})));
    CHECK(connected_hurwitz(Profile(1, 3, {4, 1})) == connected_hurwitz(Profile(1, 3, {1, 4})));
}

TEST_CASE("hurwitz table")
{
    HurwitzTable t;
    const Profile p(0, 1, {2});
    t.insert(p, make_rat(1, 2), Provenance::character);
    t.insert(p, make_rat(1, 2), Provenance::oracle);
    CHECK_THROWS_AS(t.insert(p, 1, Provenance::oracle), std::logic_error);
    CHECK(t.to_csv() == "g,r,k,m,h,provenance\n0,1,2,1,1/2,character\n0,1,2,1,1/2,oracle\n");
}

TEST_CASE("kp calibration and residual")
{
    std::vector<std::string> log;
    const KpConvention c = calibrate_kp(4, 12, &log);
    CHECK(c.divided_times);
    CHECK(c.quadratic_sign == 1);
    CHECK(log.size() == 12);
    const KpReport rep = kp_residual(2, 4);
    CHECK(rep.satisfied());
    CHECK(rep.beta_bound == 12);
}
