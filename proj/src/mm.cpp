#include "rspin/mm.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "rspin/bernoulli.hpp"

namespace rspin {

namespace {

void check_kn(int K, int N)
{
    if (K < 0 || N < 1) throw std::invalid_argument("matrix model: need K >= 0 and N >= 1");
    if (N <= K)
        throw std::invalid_argument("matrix model: need N > K, got N = " + std::to_string(N) +
                                    ", K = " + std::to_string(K));
}

int permutation_sign(std::vector<int> p)
{
    int sign = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        while (p[i] != static_cast<int>(i)) {
            std::swap(p[i], p[static_cast<std::size_t>(p[i])]);
            sign = -sign;
        }
    return sign;
}

// exp(g_s^r c) times g_s^{lead} times poly, added into out for powers <= gs_order.
void add_exponential(std::map<int, RatPoly>& out, const RatPoly& poly, int lead, int r, const Rat& c, int gs_order)
{
    Rat term = 1;
    for (int m = 0; lead + r * m <= gs_order; ++m) {
        if (m > 0) term *= c / Rat(m);
        if (term == 0) break;
        auto it = out.try_emplace(lead + r * m, RatPoly(poly.nvars())).first;
        it->second += poly * term;
        if (it->second.is_zero()) out.erase(it);
    }
}

}  // namespace

Rat APoly::operator()(const Rat& x) const
{
    Rat out = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) out = out * x + *it;
    return out;
}

APoly a_polynomial(int r, int N)
{
    if (r < 0 || N < 1) throw std::invalid_argument("a_polynomial: need r >= 0 and N >= 1");
    APoly a;
    a.r = r;
    a.N = N;
    a.coefficients.assign(static_cast<std::size_t>(r + 2), Rat(0));
    const Rat rf(factorial(static_cast<unsigned long>(r)));
    const Rat shift = make_rat(1, 2) - Rat(N);
    Rat constant = 0;
    for (int k = 0; k <= r + 1; ++k) {
        const Rat kf(factorial(static_cast<unsigned long>(k)));
        a.coefficients[static_cast<std::size_t>(r + 1 - k)] +=
            rf * pow(shift, k) / (kf * Rat(factorial(static_cast<unsigned long>(r + 1 - k))));
        const Rat two = pow(Rat(2), k - 1);
        Rat tail = rf * bernoulli_number(static_cast<unsigned>(k)) * (two - 1) / two * pow(Rat(N), r + 1 - k) /
                   (kf * Rat(factorial(static_cast<unsigned long>(r + 2 - k))));
        if ((r + 1 + k) % 2 != 0) tail = -tail;
        constant += tail;
    }
    a.coefficients[0] += constant;
    return a;
}

std::vector<int> h_tuple(const Partition& lambda, int N)
{
    if (lambda.length() > N)
        throw std::invalid_argument("h_tuple: partition " + lambda.str() + " has more than N parts");
    std::vector<int> h(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) h[static_cast<std::size_t>(i)] = (i < lambda.length() ? lambda[i] : 0) - i - 1 + N;
    return h;
}

bool a_identity_check(int r, int N, const Partition& lambda)
{
    const APoly a = a_polynomial(r, N);
    Rat lhs = 0;
    for (int h : h_tuple(lambda, N)) lhs += a(Rat(h));
    return lhs == shifted_power_sum(r + 1, lambda);
}

Rat vandermonde(const std::vector<int>& x)
{
    Rat out = 1;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) out *= Rat(x[i] - x[j]);
    return out;
}

RatPoly alternant_quotient(const std::vector<int>& e)
{
    const std::size_t n = e.size();
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    RatPoly det(n);
    do {
        Exponent x(n, 0);
        for (std::size_t i = 0; i < n; ++i) x[static_cast<std::size_t>(sigma[i])] = e[i];
        det.add_term(x, Rat(permutation_sign(sigma)));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) det = det.divide_by_difference(i, j);
    return det;
}

RatPoly schur_poly(const Partition& lambda, int N) { return alternant_quotient(h_tuple(lambda, N)); }

RatPoly frobenius_schur(const Partition& lambda, int N)
{
    if (lambda.length() > N) throw std::invalid_argument("frobenius_schur: more parts than variables");
    const int K = lambda.size();
    const auto n = static_cast<std::size_t>(N);
    RatPoly out(n);
    for (const Partition& mu : partitions_of(K)) {
        RatPoly p = RatPoly::constant(n, 1);
        for (int part : mu.parts()) {
            RatPoly power(n);
            for (std::size_t i = 0; i < n; ++i) {
                Exponent x(n, 0);
                x[i] = part;
                power.add_term(x, 1);
            }
            p = p * power;
        }
        out += p * (Rat(class_size(mu)) * Rat(irreducible_character(lambda, mu)));
    }
    return out * (Rat(1) / Rat(factorial(static_cast<unsigned long>(K))));
}

std::string ZCoefficient::str() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, p] : value) {
        if (!first) os << "; ";
        first = false;
        os << "g_s^" << e << ": " << p.str();
    }
    return first ? "0" : os.str();
}

ZCoefficient z_coefficient_character(int K, int N, int r, int gs_order)
{
    check_kn(K, N);
    if (r < 1) throw std::invalid_argument("z_coefficient_character: r must be positive");
    ZCoefficient z{K, N, gs_order, {}};
    const Rat kf(factorial(static_cast<unsigned long>(K)));
    for (const Partition& lambda : partitions_of(K)) {
        if (lambda.length() > N) continue;
        const RatPoly s = schur_poly(lambda, N) * (Rat(hook_dimension(lambda)) / kf);
        add_exponential(z.value, s, -K, r, shifted_power_sum(r + 1, lambda), gs_order);
    }
    return z;
}

int minimal_truncation(int K, int N)
{
    // D > K + (N-1)/2  <=>  2D > 2K + N - 1.
    return (2 * K + N - 1) / 2 + 1;
}

ZCoefficient z_coefficient_finite_sum(int K, int N, int D, int r, int gs_order)
{
    check_kn(K, N);
    if (r < 1) throw std::invalid_argument("z_coefficient_finite_sum: r must be positive");
    if (D < minimal_truncation(K, N))
        throw std::invalid_argument("z_coefficient_finite_sum: need D > K + (N-1)/2, got D = " + std::to_string(D));
    const APoly a = a_polynomial(r, N);
    const auto n = static_cast<std::size_t>(N);

    // Tuples whose t-power is K. The exponent of t for one entry is
    // A_1(h) = h - (N-1)/2; track twice it.
    std::vector<std::vector<int>> tuples;
    std::vector<int> h(n, 0);
    while (true) {
        long twice = 0;
        for (int x : h) twice += 2L * x - (N - 1);
        if (twice % 2 != 0) throw std::logic_error("z_coefficient_finite_sum: half-integer power of t survived");
        if (twice == 2L * K) tuples.push_back(h);
        std::size_t i = 0;
        while (i < n && h[i] == D) h[i++] = 0;
        if (i == n) break;
        ++h[i];
    }

    // Alternant quotients depend on the sorted tuple up to sign.
    std::map<std::vector<int>, std::shared_future<RatPoly>> quotients;
    for (const auto& t : tuples) {
        std::vector<int> sorted = t;
        std::sort(sorted.rbegin(), sorted.rend());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
        if (!quotients.count(sorted))
            quotients.emplace(sorted, std::async(std::launch::async, alternant_quotient, sorted).share());
    }

    ZCoefficient z{K, N, gs_order, {}};
    const Rat nf(factorial(n));
    for (const auto& t : tuples) {
        const Rat dh = vandermonde(t);
        if (dh == 0) {
            // Delta(h)^2 kills the term; the alternant vanishes with it.
            if (!alternant_quotient(t).is_zero())
                throw std::logic_error("z_coefficient_finite_sum: degenerate tuple with non-zero alternant");
            continue;
        }
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int x, int y) { return t[static_cast<std::size_t>(x)] > t[static_cast<std::size_t>(y)]; });
        std::vector<int> sorted(n);
        for (std::size_t i = 0; i < n; ++i) sorted[i] = t[static_cast<std::size_t>(order[i])];
        // Rows of det(v_j^{t_i}) permuted into sorted order.
        Rat weight = dh * Rat(permutation_sign(order)) / nf;
        Rat exponent = 0;
        for (int x : t) {
            weight /= Rat(factorial(static_cast<unsigned long>(x)));
            exponent += a(Rat(x));
        }
        add_exponential(z.value, quotients.at(sorted).get() * weight, -K, r, exponent, gs_order);
    }
    return z;
}

MatrixModelCheck matrix_model_check(int K, int N, int D, int r, int gs_order)
{
    MatrixModelCheck c{K, N, D, r, gs_order, false, ""};
    const ZCoefficient lhs = z_coefficient_character(K, N, r, gs_order);
    const ZCoefficient rhs = z_coefficient_finite_sum(K, N, D, r, gs_order);
    c.holds = lhs == rhs;
    if (c.holds) return c;
    std::set<int> powers;
    for (const auto& [e, p] : lhs.value) powers.insert(e);
    for (const auto& [e, p] : rhs.value) powers.insert(e);
    for (int e : powers) {
        const auto li = lhs.value.find(e);
        const auto ri = rhs.value.find(e);
        RatPoly diff = li == lhs.value.end() ? RatPoly(static_cast<std::size_t>(N)) : li->second;
        if (ri != rhs.value.end()) diff -= ri->second;
        if (diff.is_zero()) continue;
        const auto& [x, coeff] = *diff.terms().rbegin();
        c.first_mismatch = "g_s^" + std::to_string(e) + " " + RatPoly::monomial(x, 1).str();
        break;
    }
    return c;
}

std::string matrix_model_report_json(const std::vector<MatrixModelCheck>& checks)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks)
        arr.push_back({{"K", c.K},
                       {"N", c.N},
                       {"D", c.D},
                       {"r", c.r},
                       {"gs_order", c.gs_order},
                       {"verdict", c.holds ? "pass" : "fail"},
                       {"first_mismatch", c.first_mismatch}});
    return arr.dump(1);
}

}  // namespace rspin
