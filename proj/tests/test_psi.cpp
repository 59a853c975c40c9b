#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>

#include "rspin/psi.hpp"

using namespace rspin;

TEST_CASE("psi intersection examples")
{
    CHECK(psi_intersection(0, {0, 0, 0}) == 1);
    CHECK(psi_intersection(1, {1}) == make_rat(1, 24));
    CHECK(psi_intersection(0, {1, 0, 0, 0}) == 1);
    CHECK(psi_intersection(2, {4}) == make_rat(1, 1152));
    CHECK(psi_intersection(1, {1, 1}) == make_rat(1, 24));
    CHECK(psi_intersection(0, {2, 0, 0, 0, 0}) == 1);
    CHECK(psi_intersection(0, {1, 1, 0, 0, 0}) == 2);
    CHECK(psi_intersection(2, {2, 3}) == make_rat(29, 5760));
    CHECK(psi_intersection(3, {7}) == make_rat(1, 82944));
}

TEST_CASE("psi dimension filtering and guards")
{
    CHECK(psi_intersection(0, {1, 0, 0}) == 0);
    CHECK(psi_intersection(1, {0}) == 0);
    CHECK_THROWS_AS(psi_intersection(0, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(psi_intersection(0, {}), std::invalid_argument);
    CHECK_THROWS_AS(psi_intersection(1, {-1, 2}), std::invalid_argument);
}

TEST_CASE("string and dilaton equations")
{
    for (int g = 0; g <= 3; ++g)
        for (int n = 1; n <= 4; ++n) {
            if (2 * g - 2 + n <= 0) continue;
            // All d with sum 3g - 2 + n (one more point inserted below).
            const int target = 3 * g - 3 + n + 1;
            std::vector<int> d(static_cast<std::size_t>(n), 0);
            std::function<void(std::size_t, int)> walk = [&](std::size_t i, int left) {
                if (i + 1 == d.size()) {
                    d[i] = left;
                    std::vector<int> with0 = d;
                    with0.push_back(0);
                    Rat string = 0;
                    for (std::size_t j = 0; j < d.size(); ++j) {
                        if (d[j] == 0) continue;
                        std::vector<int> lower = d;
                        --lower[j];
                        string += psi_intersection(g, lower);
                    }
                    CHECK(psi_intersection(g, with0) == string);
                    return;
                }
                for (int x = 0; x <= left; ++x) {
                    d[i] = x;
                    walk(i + 1, left - x);
                }
            };
            walk(0, target - 1);
            // Dilaton
            std::vector<int> e(static_cast<std::size_t>(n), 0);
            e[0] = 3 * g - 3 + n;
            std::vector<int> with1 = e;
            with1.push_back(1);
            CHECK(psi_intersection(g, with1) == Rat(2 * g - 2 + n) * psi_intersection(g, e));
        }
}

TEST_CASE("psi cache round trip")
{
    const auto dir = std::filesystem::temp_directory_path() / "rspin_psi_test";
    std::filesystem::remove_all(dir);
    const std::string path = (dir / "psi.json").string();
    CHECK(load_psi_cache(path) == 0);
    psi_intersection(2, {4});
    save_psi_cache(path);
    CHECK(load_psi_cache(path) == psi_cache_size());
    CHECK(psi_intersection(2, {4}) == make_rat(1, 1152));
    {
        std::ofstream out(dir / "bad.json");
        out << R"({"format": "rspin-psi-v0", "entries": []})";
    }
    CHECK_THROWS_AS(load_psi_cache((dir / "bad.json").string()), std::runtime_error);
    {
        std::ofstream out(dir / "garbage.json");
        out << "{ not json";
    }
    CHECK_THROWS_AS(load_psi_cache((dir / "garbage.json").string()), std::runtime_error);
    std::filesystem::remove_all(dir);
}
