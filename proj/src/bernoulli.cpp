#include "rspin/bernoulli.hpp"

#include <mutex>
#include <shared_mutex>
#include <vector>

#include "rspin/series.hpp"

namespace rspin {

namespace {

std::shared_mutex cache_mutex;
std::vector<Rat> cache;

// w / (e^w - 1) = 1 / (sum_j w^j / (j+1)!), read off to the requested order.
std::vector<Rat> bernoulli_table(unsigned max_k)
{
    const std::size_t order = max_k + 1;
    RatSeries denom(order);
    for (std::size_t j = 0; j < order; ++j) denom[j] = make_rat(BigInt(1), factorial(j + 1));
    const RatSeries gf = reciprocal(denom);
    std::vector<Rat> out(order);
    for (std::size_t j = 0; j < order; ++j) out[j] = gf[j] * Rat(factorial(j));
    return out;
}

}  // namespace

Rat bernoulli_number(unsigned k)
{
    {
        std::shared_lock lock(cache_mutex);
        if (k < cache.size()) return cache[k];
    }
    // Grow geometrically so repeated queries stay cheap.
    const unsigned target = std::max<unsigned>(k, 2 * static_cast<unsigned>(cache.size()) + 8);
    auto table = bernoulli_table(target);
    std::unique_lock lock(cache_mutex);
    if (table.size() > cache.size()) cache = std::move(table);
    return cache[k];
}

Rat bernoulli_poly(unsigned k, const Rat& v)
{
    // Product of w/(e^w-1) and e^{wv}: B_k(v) = sum_j C(k,j) B_j v^{k-j}.
    Rat out(0);
    Rat vpow(1);
    for (unsigned i = 0; i <= k; ++i) {
        const unsigned j = k - i;
        out += Rat(binomial(k, j)) * bernoulli_number(j) * vpow;
        vpow *= v;
    }
    return out;
}

}  // namespace rspin
