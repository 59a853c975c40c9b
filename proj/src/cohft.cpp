#include "rspin/cohft.hpp"

#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "json.hpp"
#include "rspin/bernoulli.hpp"

namespace rspin {

namespace {

int mod(long x, int r) { return static_cast<int>(((x % r) + r) % r); }

void check_r(int r)
{
    if (r < 1) throw std::invalid_argument("r must be positive, got " + std::to_string(r));
}

void check_index(int r, int a)
{
    if (a < 0 || a >= r)
        throw std::invalid_argument("basis index " + std::to_string(a) + " outside 0.." + std::to_string(r - 1));
}

}  // namespace

Rat tqft_value(int r, int g, const std::vector<int>& a)
{
    check_r(r);
    if (g < 0) throw std::invalid_argument("tqft_value: negative genus");
    long s = 2L * g - 2;
    for (int x : a) {
        check_index(r, x);
        s -= x;
    }
    if (mod(s, r) != 0) return 0;
    return pow(Rat(r), 2L * g - 1);
}

Rat metric(int r, int a, int b)
{
    check_r(r);
    check_index(r, a);
    check_index(r, b);
    return mod(a + b + 2, r) == 0 ? make_rat(1, r) : Rat(0);
}

Rat metric_inverse(int r, int a, int b)
{
    check_r(r);
    check_index(r, a);
    check_index(r, b);
    return mod(a + b + 2, r) == 0 ? Rat(r) : Rat(0);
}

int quantum_product(int r, int a, int b)
{
    check_r(r);
    check_index(r, a);
    check_index(r, b);
    return (a + b) % r;
}

CycExt idempotent_coefficient(int r, int i, int a)
{
    check_index(r, i);
    check_index(r, a);
    return CycExt::zeta(r, static_cast<long>(a) * i) * CycExt::scalar(r, make_rat(1, r));
}

RatSeries r_matrix_series(int r, int a, int order)
{
    check_r(r);
    check_index(r, a);
    if (order < 1) throw std::invalid_argument("r_matrix_series: order must be positive");
    RatSeries expo(static_cast<std::size_t>(order));
    const Rat x = make_rat(a + 1, r);
    for (int k = 1; k < order; ++k)
        expo[k] = -bernoulli_poly(static_cast<unsigned>(k + 1), x) / Rat(static_cast<long>(k) * (k + 1));
    return exp(expo);
}

Rat r_matrix_coefficient(int r, int a, int k)
{
    if (k < 0) throw std::invalid_argument("r_matrix_coefficient: negative power");
    return r_matrix_series(r, a, k + 1)[static_cast<std::size_t>(k)];
}

bool symplectic_condition(int r, int order)
{
    // R diagonal, so the condition reads R_a(z) R_{a'}(-z) = 1 with a' paired to a by eta.
    for (int a = 0; a < r; ++a) {
        const int ap = mod(-2 - a, r);
        const RatSeries prod = r_matrix_series(r, a, order) * scale_argument(r_matrix_series(r, ap, order), Rat(-1));
        if (prod != RatSeries::constant(1, static_cast<std::size_t>(order))) return false;
    }
    return true;
}

GiventalTheory<Rat> rspin_theory(int r, int degree)
{
    check_r(r);
    if (degree < 0) throw std::invalid_argument("rspin_theory: negative degree");
    const int order = degree + 1;
    GiventalTheory<Rat> th;
    th.basis = r;
    th.omega = [r](int g, const std::vector<int>& a) -> Rat { return tqft_value(r, g, a); };
    th.eta_inverse.assign(r, std::vector<Rat>(r, Rat(0)));
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) th.eta_inverse[a][b] = metric_inverse(r, a, b);
    MatrixSeries<Rat> R(order, Matrix<Rat>(r, std::vector<Rat>(r, Rat(0))));
    for (int a = 0; a < r; ++a) {
        const RatSeries s = r_matrix_series(r, a, order);
        for (int k = 0; k < order; ++k) R[k][a][a] = s[k];
    }
    th.r_inverse = invert_matrix_series(R);
    std::vector<Rat> unit(r, Rat(0));
    unit[0] = 1;
    th.translation = standard_translation(th.r_inverse, unit);
    return th;
}

Rat givental_correlator(int r, int g, const std::vector<Insertion>& pairs)
{
    check_r(r);
    for (const auto& [a, d] : pairs) {
        check_index(r, a);
        if (d < 0) throw std::invalid_argument("givental_correlator: negative psi exponent");
    }
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GiventalEngine<Rat>>> engines;
    const GiventalEngine<Rat>* engine = nullptr;
    {
        std::lock_guard lock(mutex);
        auto& slot = engines[r];
        if (!slot) slot = std::make_unique<GiventalEngine<Rat>>(rspin_theory(r, kMaxGraphDimension));
        engine = slot.get();
    }
    return engine->correlator(g, pairs);
}

namespace {

void check_profile(const Profile& p)
{
    if (!p.stable())
        throw std::invalid_argument("unstable (g, n) = (" + std::to_string(p.g) + ", " + std::to_string(p.n()) +
                                    "): no r-spin integral");
    (void)p.m();  // domain_error when invalid
}

// Calls visit(d) for every d with sum d <= total.
void for_each_degree(int n, int total, const std::function<void(const std::vector<int>&)>& visit)
{
    std::vector<int> d(n, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n) {
            visit(d);
            return;
        }
        for (int x = 0; x <= left; ++x) {
            d[i] = x;
            rec(i + 1, left - x);
        }
        d[i] = 0;
    };
    rec(0, total);
}

std::vector<Insertion> insertions_of(const Profile& p, const std::vector<int>& d)
{
    std::vector<Insertion> out;
    for (int i = 0; i < p.n(); ++i) out.emplace_back(p.a(i), d[i]);
    return out;
}

}  // namespace

Rat f_number(const Profile& p)
{
    check_profile(p);
    const int n = p.n();
    const int m = p.m();
    const Rat r(p.r);
    Rat pref = Rat(factorial(static_cast<unsigned long>(m))) * pow(r, m + n + 2L * p.g - 2);
    for (int i = 0; i < n; ++i)
        pref *= pow(Rat(p.k[i]) / r, p.p(i)) / Rat(factorial(static_cast<unsigned long>(p.p(i))));
    Rat integral = 0;
    for_each_degree(n, 3 * p.g - 3 + n, [&](const std::vector<int>& d) {
        const Rat c = givental_correlator(p.r, p.g, insertions_of(p, d));
        if (c == 0) return;
        Rat w = c;
        for (int i = 0; i < n; ++i) w *= pow(Rat(p.k[i]) / r, d[i]);
        integral += w;
    });
    return pref * integral;
}

Rat F_coefficient(const Profile& p)
{
    check_profile(p);
    const Rat direct = f_number(p) / Rat(factorial(static_cast<unsigned long>(p.m())));

    const int n = p.n();
    long asum = 0;
    for (int i = 0; i < n; ++i) asum += p.a(i);
    const long shift = 2L * p.g - 2 - asum;
    if (shift % p.r != 0) throw std::logic_error("F_coefficient: selection rule violated for a valid profile");
    Rat resummed = 0;
    for_each_degree(n, 3 * p.g - 3 + n, [&](const std::vector<int>& d) {
        const Rat c = givental_correlator(p.r, p.g, insertions_of(p, d));
        if (c == 0) return;
        long dsum = 0;
        for (int x : d) dsum += x;
        Rat w = c * pow(Rat(p.r), 2L * p.g + 2L * n - 2 + shift / p.r - dsum);
        for (int i = 0; i < n; ++i)
            w *= pow(Rat(p.k[i]), p.p(i) + d[i]) / Rat(factorial(static_cast<unsigned long>(p.p(i))));
        resummed += w;
    });
    if (direct != resummed)
        throw std::logic_error("F_coefficient: f/m! = " + to_string(direct) + " but resummation gives " +
                               to_string(resummed) + " for " + p.str());
    return direct;
}

CorrelatorTable CorrelatorTable::build(int r, int g, int n)
{
    check_r(r);
    if (g < 0 || 2 * g - 2 + n <= 0) throw std::invalid_argument("CorrelatorTable: unstable (g, n)");
    CorrelatorTable t;
    t.r = r;
    const int dim = 3 * g - 3 + n;
    std::vector<Insertion> cur;
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n) {
            t.entries.emplace(std::make_pair(g, cur), givental_correlator(r, g, cur));
            return;
        }
        for (int a = 0; a < r; ++a)
            for (int d = 0; d <= left; ++d) {
                const Insertion x{a, d};
                if (!cur.empty() && x < cur.back()) continue;
                cur.push_back(x);
                rec(i + 1, left - d);
                cur.pop_back();
            }
    };
    rec(0, dim);
    return t;
}

std::string CorrelatorTable::to_json() const
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [key, value] : entries) {
        nlohmann::json pairs = nlohmann::json::array();
        for (const auto& [a, d] : key.second) pairs.push_back({a, d});
        arr.push_back({{"g", key.first}, {"r", r}, {"pairs", pairs}, {"value", to_string(value)}});
    }
    return arr.dump();
}

}  // namespace rspin
