#include "doctest.h"

#include "rspin/partitions.hpp"

using namespace rspin;

namespace {

Partition P(std::vector<int> parts) { return Partition(std::move(parts)); }

}  // namespace

TEST_CASE("partition validation")
{
    CHECK_THROWS_AS(P({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(P({2, 0}), std::invalid_argument);
    CHECK(Partition::from_unsorted({1, 3, 0, 2}) == P({3, 2, 1}));
    CHECK(partitions_of(5).size() == 7);
    CHECK(partitions_of(0).size() == 1);
    CHECK(partitions_of(4).front() == P({4}));
    CHECK(partitions_of(4).back() == P({1, 1, 1, 1}));
    CHECK(P({3, 1, 1}).conjugate() == P({3, 1, 1}));
    CHECK(P({4, 2}).conjugate() == P({2, 2, 1, 1}));
}

TEST_CASE("shifted power sums")
{
    CHECK(shifted_power_sum(1, P({3, 1})) == 4);
    CHECK(shifted_power_sum(2, P({2})) == 1);
    CHECK(shifted_power_sum(2, P({1, 1})) == -1);
    for (int s = 1; s <= 6; ++s) CHECK(shifted_power_sum(s, Partition()) == 0);
}

TEST_CASE("irreducible characters")
{
    for (int k = 1; k <= 6; ++k)
        for (const auto& mu : partitions_of(k)) CHECK(irreducible_character(P({k}), mu) == 1);
    CHECK(irreducible_character(P({2, 1}), P({3})) == -1);
    CHECK(irreducible_character(P({2, 1}), P({1, 1, 1})) == 2);
    CHECK(irreducible_character(P({2, 1}), P({2, 1})) == 0);
    CHECK(irreducible_character(P({3, 2}), P({1, 1, 1, 1, 1})) == 5);
    CHECK_THROWS_AS(irreducible_character(P({2}), P({1})), std::invalid_argument);
    for (int k = 1; k <= 8; ++k) {
        const Partition ones(std::vector<int>(static_cast<std::size_t>(k), 1));
        for (const auto& lambda : partitions_of(k))
            CHECK(BigInt(irreducible_character(lambda, ones)) == hook_dimension(lambda));
    }
}

TEST_CASE("character orthogonality")
{
    for (int k = 1; k <= 6; ++k) {
        const auto& parts = partitions_of(k);
        for (const auto& a : parts)
            for (const auto& b : parts) {
                BigInt sum = 0;
                for (const auto& mu : parts)
                    sum += class_size(mu) * BigInt(irreducible_character(a, mu)) *
                           BigInt(irreducible_character(b, mu));
                CHECK(sum == (a == b ? factorial(k) : BigInt(0)));
            }
    }
}

TEST_CASE("stable central characters")
{
    // Equal parts are chosen as a set: C(1,1) acts as p(p-1)/2.
    CHECK(stable_central_character(P({1, 1}), P({2, 1})) == 3);
    CHECK(stable_central_character(P({1, 1, 1}), P({3})) == 1);
    for (int k = 1; k <= 5; ++k)
        for (const auto& mu : partitions_of(k)) CHECK(stable_central_character(P({1}), mu) == k);
    CHECK(stable_central_character(P({2}), P({2})) == 1);
    CHECK(stable_central_character(P({2}), P({1, 1})) == -1);
    CHECK(stable_central_character(P({3}), P({2})) == 0);
}

TEST_CASE("completed cycle table")
{
    CHECK(completed_cycle(1).str() == "1*C(1)");
    CHECK(completed_cycle(2).str() == "1*C(2)");
    CHECK(completed_cycle(3).str() == "1*C(3) + 1*C(1,1) + 1/12*C(1)");
    CHECK(completed_cycle(4).str() == "1*C(4) + 2*C(2,1) + 5/4*C(2)");
    // The coefficient of C(3) is forced to 11/2 by the S_3 irreps; see the
    // erratum test below.
    CHECK(completed_cycle(5).str() ==
          "1*C(5) + 3*C(3,1) + 4*C(2,2) + 11/2*C(3) + 4*C(1,1,1) + 3/2*C(1,1) + 1/80*C(1)");
}

TEST_CASE("completed cycles reproduce shifted power sums beyond the solving set")
{
    for (int s = 1; s <= 6; ++s) {
        const auto& cc = completed_cycle(s);
        for (int k = 0; k <= s + 2; ++k)
            for (const auto& mu : partitions_of(k)) {
                Rat total = 0;
                for (const auto& t : cc.terms) total += t.coefficient * stable_central_character(t.lambda, mu);
                CHECK(total == shifted_power_sum(s, mu));
            }
    }
}

TEST_CASE("genus defects are non-negative integers")
{
    for (int s = 1; s <= 7; ++s)
        for (const auto& t : completed_cycle(s).terms) {
            CHECK(is_integer(t.genus_defect));
            CHECK(t.genus_defect >= 0);
        }
    CHECK(completed_cycle(5).terms.back().genus_defect == 2);
}

TEST_CASE("C(3) coefficient 11/3 cannot reproduce p_5 on S_3")
{
    // With every other published coefficient fixed, p_5 on the irreps (3) and
    // (2,1) would need two different C(3) coefficients.
    const auto& cc = completed_cycle(5);
    auto residual = [&](const Partition& mu, const Rat& c3) -> Rat {
        Rat total = 0;
        for (const auto& t : cc.terms) {
            const Rat c = t.lambda == P({3}) ? c3 : t.coefficient;
            total += c * stable_central_character(t.lambda, mu);
        }
        return total - shifted_power_sum(5, mu);
    };
    CHECK(residual(P({2, 1}), make_rat(11, 3)) != 0);
    CHECK(residual(P({3}), make_rat(11, 3)) != 0);
    CHECK(residual(P({2, 1}), make_rat(11, 2)) == 0);
    CHECK(residual(P({3}), make_rat(11, 2)) == 0);
}
