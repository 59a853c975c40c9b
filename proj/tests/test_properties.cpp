#include "doctest.h"

#include <algorithm>
#include <random>

#include "rspin/cohft.hpp"
#include "rspin/cyclotomic.hpp"
#include "rspin/hurwitz.hpp"
#include "rspin/mm.hpp"
#include "rspin/partitions.hpp"
#include "rspin/series.hpp"
#include "rspin/spectral.hpp"

using namespace rspin;

namespace {

constexpr unsigned kSeed = 20240611;

Rat random_rat(std::mt19937& gen)
{
    std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
    return make_rat(num(gen), den(gen));
}

CycExt random_cyc(std::mt19937& gen, int r)
{
    CycExt x = CycExt::scalar(r, random_rat(gen));
    for (int k = 1; k < r; ++k) x += CycExt::zeta(r, k) * CycExt::scalar(r, random_rat(gen));
    x += CycExt::alpha(r) * CycExt::scalar(r, random_rat(gen));
    return x;
}

RatSeries random_series(std::mt19937& gen, std::size_t order, bool zero_constant)
{
    RatSeries s(order);
    for (std::size_t k = 0; k < order; ++k) s[k] = random_rat(gen);
    if (zero_constant) s[0] = 0;
    return s;
}

Partition random_partition(std::mt19937& gen, int max_size, int max_length)
{
    std::uniform_int_distribution<int> size_dist(0, max_size);
    while (true) {
        const auto& all = partitions_of(size_dist(gen));
        std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
        const Partition& p = all[pick(gen)];
        if (p.length() <= max_length) return p;
    }
}

}  // namespace

TEST_CASE("cyclotomic arithmetic is a commutative field")
{
    std::mt19937 gen(kSeed);
    for (int r = 1; r <= 6; ++r)
        for (int trial = 0; trial < 15; ++trial) {
            const CycExt a = random_cyc(gen, r), b = random_cyc(gen, r), c = random_cyc(gen, r);
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a - a == CycExt());
            if (!a.is_zero()) CHECK(a * a.inverse() == CycExt(1));
        }
    for (int r = 1; r <= 8; ++r) {
        CHECK(CycExt::zeta(r, r) == CycExt(1));
        CHECK(CycExt::alpha(r) * CycExt::alpha(r) == CycExt(make_rat(-2, r)));
    }
}

TEST_CASE("series reversion is two-sided")
{
    std::mt19937 gen(kSeed + 1);
    const std::size_t order = 8;
    const RatSeries z = RatSeries::variable(order);
    for (int trial = 0; trial < 20; ++trial) {
        RatSeries s = random_series(gen, order, true);
        if (s[1] == 0) s[1] = 1;
        const RatSeries t = lagrange_invert(s);
        CHECK(compose(s, t) == z);
        CHECK(compose(t, s) == z);
        const RatSeries u = random_series(gen, order, true);
        CHECK(log(exp(u)) == u);
    }
}

TEST_CASE("A identity on random partitions")
{
    std::mt19937 gen(kSeed + 2);
    std::uniform_int_distribution<int> rd(1, 4), nd(1, 6);
    for (int trial = 0; trial < 50; ++trial) {
        const int r = rd(gen), N = nd(gen);
        const Partition lambda = random_partition(gen, 8, N);
        INFO("r=" << r << " N=" << N << " lambda=" << lambda.str());
        CHECK(a_identity_check(r, N, lambda));
    }
}

TEST_CASE("Frobenius formula and dimension identity")
{
    for (int K = 0; K <= 5; ++K)
        for (const Partition& lambda : partitions_of(K))
            for (int N = std::max(1, lambda.length()); N <= lambda.length() + 2; ++N) {
                INFO("lambda=" << lambda.str() << " N=" << N);
                const RatPoly s = schur_poly(lambda, N);
                CHECK(s.is_symmetric());
                if (N <= 4) CHECK(s == frobenius_schur(lambda, N));
                const std::vector<int> h = h_tuple(lambda, N);
                Rat rhs = vandermonde(h);
                for (int x : h) rhs /= Rat(factorial(static_cast<unsigned long>(x)));
                CHECK(Rat(hook_dimension(lambda)) / Rat(factorial(static_cast<unsigned long>(K))) == rhs);
            }
}

TEST_CASE("R-matrix symplectic condition")
{
    for (int r = 1; r <= 8; ++r) CHECK(symplectic_condition(r, 8));
}

TEST_CASE("correlators are symmetric in their insertions")
{
    std::mt19937 gen(kSeed + 3);
    for (int trial = 0; trial < 12; ++trial) {
        const int r = 2 + trial % 2;
        const bool genus_one = trial % 3 == 0;
        const int g = genus_one ? 1 : 0, n = genus_one ? 2 : 4;
        std::vector<Insertion> pairs;
        std::uniform_int_distribution<int> ad(0, r - 1);
        int left = 3 * g - 3 + n;
        for (int j = 0; j < n; ++j) {
            const int d = std::uniform_int_distribution<int>(0, left)(gen);
            left -= d;
            pairs.emplace_back(ad(gen), d);
        }
        const Rat value = givental_correlator(r, g, pairs);
        std::shuffle(pairs.begin(), pairs.end(), gen);
        CHECK(givental_correlator(r, g, pairs) == value);
    }
}

TEST_CASE("Hurwitz numbers are symmetric in the poles")
{
    std::mt19937 gen(kSeed + 4);
    std::uniform_int_distribution<int> kd(1, 4);
    int tested = 0;
    while (tested < 15) {
        const int r = 1 + tested % 3;
        std::vector<int> k{kd(gen), kd(gen), kd(gen)};
        const Profile p(0, r, k);
        if (!p.valid()) continue;
        std::shuffle(k.begin(), k.end(), gen);
        CHECK(connected_hurwitz(p) == connected_hurwitz(Profile(0, r, k)));
        ++tested;
    }
}

TEST_CASE("root-scaled products")
{
    std::mt19937 gen(kSeed + 5);
    std::uniform_int_distribution<int> fd(-6, 6);
    for (int r = 2; r <= 4; ++r)
        for (int trial = 0; trial < 10; ++trial) {
            auto term = [&] { return RootScaled(r, random_cyc(gen, r), make_rat(fd(gen), r)); };
            const RootScaled a = term() + term(), b = term(), c = term();
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            if (!b.is_zero()) CHECK((b * b.inverse()).rational_value() == 1);
        }
}
