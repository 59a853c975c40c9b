#include "rspin/partitions.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace rspin {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts))
{
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0) throw std::invalid_argument("Partition: parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("Partition: parts must be non-increasing");
        size_ += parts_[i];
    }
}

Partition Partition::from_unsorted(std::vector<int> parts)
{
    for (int p : parts)
        if (p < 0) throw std::invalid_argument("Partition: negative part");
    parts.erase(std::remove(parts.begin(), parts.end(), 0), parts.end());
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Partition(std::move(parts));
}

int Partition::multiplicity(int j) const
{
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), j));
}

BigInt Partition::automorphism_order() const
{
    BigInt out = 1;
    std::size_t i = 0;
    while (i < parts_.size()) {
        std::size_t j = i;
        while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
        out *= factorial(j - i);
        i = j;
    }
    return out;
}

Partition Partition::conjugate() const
{
    std::vector<int> out;
    for (int c = 1; !parts_.empty() && c <= parts_[0]; ++c) {
        int count = 0;
        for (int p : parts_)
            if (p >= c) ++count;
        out.push_back(count);
    }
    return Partition(std::move(out));
}

std::string Partition::str() const
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << ")";
    return os.str();
}

namespace {

void generate(int n, int max_part, std::vector<int>& prefix, std::vector<Partition>& out)
{
    if (n == 0) {
        out.emplace_back(prefix);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        prefix.push_back(p);
        generate(n - p, p, prefix, out);
        prefix.pop_back();
    }
}

std::string character_key(const std::vector<int>& lambda, const std::vector<int>& mu, std::size_t from)
{
    std::string key;
    key.reserve(lambda.size() + mu.size() - from + 1);
    for (int p : lambda) key.push_back(static_cast<char>(p));
    key.push_back('\xff');
    for (std::size_t i = from; i < mu.size(); ++i) key.push_back(static_cast<char>(mu[i]));
    return key;
}

std::shared_mutex character_mutex;
std::unordered_map<std::string, long> character_cache;

// Murnaghan-Nakayama on beta-sets: remove a rim hook of length mu[from].
long mn_character(const std::vector<int>& lambda, const std::vector<int>& mu, std::size_t from)
{
    if (from == mu.size()) return lambda.empty() ? 1 : 0;
    const std::string key = character_key(lambda, mu, from);
    {
        std::shared_lock lock(character_mutex);
        if (auto it = character_cache.find(key); it != character_cache.end()) return it->second;
    }
    const int k = mu[from];
    const int l = static_cast<int>(lambda.size());
    std::vector<int> beta(lambda.size());
    for (int i = 0; i < l; ++i) beta[i] = lambda[i] + (l - 1 - i);
    long total = 0;
    for (int i = 0; i < l; ++i) {
        const int target = beta[i] - k;
        if (target < 0) continue;
        if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
        int between = 0;
        for (int b : beta)
            if (b > target && b < beta[i]) ++between;
        std::vector<int> moved = beta;
        moved[i] = target;
        std::sort(moved.begin(), moved.end(), std::greater<>());
        std::vector<int> next;
        for (int j = 0; j < l; ++j) {
            const int part = moved[j] - (l - 1 - j);
            if (part > 0) next.push_back(part);
        }
        const long sub = mn_character(next, mu, from + 1);
        total += (between % 2 == 0) ? sub : -sub;
    }
    std::unique_lock lock(character_mutex);
    character_cache.emplace(key, total);
    return total;
}


// Solves A x = b over the rationals; A must be square and invertible.
std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> a, std::vector<Rat> b)
{
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) throw std::logic_error("completed_cycle: singular system");
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            const Rat factor = a[row][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[row][c] -= factor * a[col][c];
            b[row] -= factor * b[col];
        }
    }
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

CompletedCycle build_completed_cycle(int r_plus_1)
{
    // Coefficients by size, solved one size at a time against the triangular
    // structure f_lambda(mu) = 0 for |mu| < |lambda|.
    std::vector<std::pair<Partition, Rat>> known;
    for (int q = 1; q <= r_plus_1; ++q) {
        const auto& level = partitions_of(q);
        const std::size_t n = level.size();
        std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
        std::vector<Rat> b(n);
        for (std::size_t row = 0; row < n; ++row) {
            const Partition& mu = level[row];
            b[row] = shifted_power_sum(r_plus_1, mu);
            for (const auto& [lambda, c] : known) b[row] -= c * stable_central_character(lambda, mu);
            for (std::size_t col = 0; col < n; ++col) a[row][col] = stable_central_character(level[col], mu);
        }
        const auto x = solve_linear(std::move(a), std::move(b));
        for (std::size_t i = 0; i < n; ++i) known.emplace_back(level[i], x[i]);
    }
    CompletedCycle out;
    out.r_plus_1 = r_plus_1;
    for (auto it = known.rbegin(); it != known.rend(); ++it) {
        if (it->second == 0) continue;
        out.terms.push_back({it->first, it->second, genus_defect(r_plus_1 - 1, it->first)});
    }
    // Within one size the levels were generated reverse-lex, reversed above.
    std::stable_sort(out.terms.begin(), out.terms.end(), [](const auto& x, const auto& y) {
        if (x.lambda.size() != y.lambda.size()) return x.lambda.size() > y.lambda.size();
        return x.lambda > y.lambda;
    });
    return out;
}

}  // namespace

const std::vector<Partition>& partitions_of(int n)
{
    static std::mutex mutex;
    static std::map<int, std::vector<Partition>> cache;
    if (n < 0) throw std::invalid_argument("partitions_of: negative n");
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Partition> out;
    std::vector<int> prefix;
    generate(n, n, prefix, out);
    return cache.emplace(n, std::move(out)).first->second;
}

BigInt hook_dimension(const Partition& lambda)
{
    const Partition conj = lambda.conjugate();
    BigInt hooks = 1;
    for (int i = 0; i < lambda.length(); ++i)
        for (int j = 0; j < lambda[i]; ++j) hooks *= (lambda[i] - j - 1) + (conj[j] - i - 1) + 1;
    return factorial(static_cast<unsigned long>(lambda.size())) / hooks;
}

BigInt z_factor(const Partition& mu)
{
    BigInt out = mu.automorphism_order();
    for (int p : mu.parts()) out *= p;
    return out;
}

BigInt class_size(const Partition& mu)
{
    return factorial(static_cast<unsigned long>(mu.size())) / z_factor(mu);
}

Rat shifted_power_sum(int s, const Partition& mu)
{
    if (s < 1) throw std::invalid_argument("shifted_power_sum: s must be positive");
    Rat total = 0;
    for (int i = 1; i <= mu.length(); ++i) {
        const Rat shift = make_rat(1 - 2 * i, 2);
        total += pow(Rat(mu[i - 1]) + shift, s) - pow(shift, s);
    }
    return total / s;
}

long irreducible_character(const Partition& lambda, const Partition& mu)
{
    if (lambda.size() != mu.size()) throw std::invalid_argument("irreducible_character: size mismatch");
    return mn_character(lambda.parts(), mu.parts(), 0);
}

Rat stable_central_character(const Partition& lambda, const Partition& mu)
{
    const int p = mu.size();
    const int q = lambda.size();
    if (p < q) return 0;
    std::vector<int> nu_parts = lambda.parts();
    nu_parts.insert(nu_parts.end(), static_cast<std::size_t>(p - q), 1);
    const Partition nu(std::move(nu_parts));
    // Ways to pick the cycles of lambda among those of nu; equal lengths are
    // chosen as a set, which is the normalization of the completed-cycle table.
    BigInt ways = 1;
    for (int j = 1; j <= q; ++j) {
        const int need = lambda.multiplicity(j);
        if (need > 0) ways *= binomial(nu.multiplicity(j), need);
    }
    const Rat chi = Rat(static_cast<long>(irreducible_character(mu, nu)));
    return Rat(class_size(nu) * ways) * chi / Rat(hook_dimension(mu));
}

Rat genus_defect(int r, const Partition& lambda)
{
    return make_rat(r + 2 - lambda.size() - lambda.length(), 2);
}

Rat CompletedCycle::coefficient(const Partition& lambda) const
{
    for (const auto& t : terms)
        if (t.lambda == lambda) return t.coefficient;
    return 0;
}

std::string CompletedCycle::str() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) os << " + ";
        os << to_string(terms[i].coefficient) << "*C" << terms[i].lambda.str();
    }
    return os.str();
}

const CompletedCycle& completed_cycle(int r_plus_1)
{
    static std::mutex mutex;
    static std::map<int, CompletedCycle> cache;
    if (r_plus_1 < 1) throw std::invalid_argument("completed_cycle: r+1 must be positive");
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(r_plus_1); it != cache.end()) return it->second;
    }
    CompletedCycle built = build_completed_cycle(r_plus_1);
    std::lock_guard lock(mutex);
    return cache.emplace(r_plus_1, std::move(built)).first->second;
}

}  // namespace rspin
