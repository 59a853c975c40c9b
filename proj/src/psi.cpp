#include "rspin/psi.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

#include "json.hpp"

namespace rspin {

namespace {

using Key = std::pair<int, std::vector<int>>;

std::shared_mutex memo_mutex;
std::map<Key, Rat> memo;

Rat odd_df(int n) { return double_factorial(n); }

Rat compute(int g, const std::vector<int>& d);

// d sorted ascending.
Rat lookup(int g, std::vector<int> d)
{
    const int n = static_cast<int>(d.size());
    if (2 * g - 2 + n <= 0) return 0;
    int sum = 0;
    for (int x : d) {
        if (x < 0) return 0;
        sum += x;
    }
    if (sum != 3 * g - 3 + n) return 0;
    std::sort(d.begin(), d.end());
    Key key{g, d};
    {
        std::shared_lock lock(memo_mutex);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
    }
    Rat value = compute(g, key.second);
    std::unique_lock lock(memo_mutex);
    memo.emplace(std::move(key), value);
    return value;
}

// Dijkgraaf-Verlinde-Verlinde recursion on the largest insertion.
Rat compute(int g, const std::vector<int>& d)
{
    const int n = static_cast<int>(d.size());
    if (g == 0 && n == 3) return 1;  // all zero by dimension
    if (g == 1 && n == 1) return make_rat(1, 24);
    if (d.back() == 0) return 0;  // only <tau_0^3>_0 survives
    const int k = d.back() - 1;
    const std::vector<int> rest(d.begin(), d.end() - 1);
    Rat total = 0;
    for (std::size_t j = 0; j < rest.size(); ++j) {
        std::vector<int> next = rest;
        next[j] = k + rest[j];
        total += odd_df(2 * k + 2 * rest[j] + 1) / odd_df(2 * rest[j] - 1) * lookup(g, next);
    }
    Rat split = 0;
    for (int a = 0; a <= k - 1; ++a) {
        const int b = k - 1 - a;
        const Rat w = odd_df(2 * a + 1) * odd_df(2 * b + 1);
        if (g >= 1) {
            std::vector<int> next = rest;
            next.push_back(a);
            next.push_back(b);
            split += w * lookup(g - 1, next);
        }
        const std::size_t m = rest.size();
        for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
            std::vector<int> left{a};
            std::vector<int> right{b};
            for (std::size_t i = 0; i < m; ++i) (mask & (1U << i) ? left : right).push_back(rest[i]);
            for (int g1 = 0; g1 <= g; ++g1) {
                const Rat l = lookup(g1, left);
                if (l == 0) continue;
                split += w * l * lookup(g - g1, right);
            }
        }
    }
    total += split / 2;
    return total / odd_df(2 * k + 3);
}

}  // namespace

Rat psi_intersection(int g, const std::vector<int>& d)
{
    const int n = static_cast<int>(d.size());
    if (g < 0) throw std::invalid_argument("psi_intersection: negative genus");
    if (2 * g - 2 + n <= 0)
        throw std::invalid_argument("psi_intersection: unstable (g, n) = (" + std::to_string(g) + ", " +
                                    std::to_string(n) + ")");
    for (int x : d)
        if (x < 0) throw std::invalid_argument("psi_intersection: negative exponent");
    return lookup(g, d);
}

void save_psi_cache(const std::string& path)
{
    nlohmann::json entries = nlohmann::json::array();
    {
        std::shared_lock lock(memo_mutex);
        for (const auto& [key, value] : memo)
            entries.push_back({{"g", key.first}, {"d", key.second}, {"value", to_string(value)}});
    }
    const nlohmann::json doc{{"format", kPsiCacheFormat}, {"entries", entries}};
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_psi_cache: cannot write " + path);
    out << doc.dump(1) << "\n";
}

std::size_t load_psi_cache(const std::string& path)
{
    std::ifstream in(path);
    if (!in) return 0;
    std::map<Key, Rat> loaded;
    try {
        const nlohmann::json doc = nlohmann::json::parse(in);
        if (doc.at("format").get<std::string>() != kPsiCacheFormat)
            throw std::runtime_error("load_psi_cache: " + path + " has format " +
                                     doc.at("format").get<std::string>() + ", expected " + kPsiCacheFormat);
        for (const auto& e : doc.at("entries")) {
            std::vector<int> d = e.at("d").get<std::vector<int>>();
            std::sort(d.begin(), d.end());
            loaded.emplace(Key{e.at("g").get<int>(), d}, parse_rat(e.at("value").get<std::string>()));
        }
    } catch (const nlohmann::json::exception& ex) {
        throw std::runtime_error("load_psi_cache: malformed " + path + ": " + ex.what());
    }
    std::unique_lock lock(memo_mutex);
    for (auto& [k, v] : loaded) memo.insert_or_assign(k, v);
    return loaded.size();
}

std::size_t psi_cache_size()
{
    std::shared_lock lock(memo_mutex);
    return memo.size();
}

}  // namespace rspin
