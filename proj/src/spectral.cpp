#include "rspin/spectral.hpp"

#include <functional>
#include <future>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "rspin/bernoulli.hpp"

namespace rspin {

namespace {

void check_r(int r)
{
    if (r < 1) throw std::invalid_argument("r must be positive, got " + std::to_string(r));
}

CycExt typed(int r, const Rat& x) { return CycExt::scalar(r, x); }

// exp(-sum_k B_{k+1}(v)/(k(k+1)) z^k) through z^{order-1}.
RatSeries bernoulli_exponential(const Rat& v, int order)
{
    RatSeries e(static_cast<std::size_t>(order));
    for (int k = 1; k < order; ++k)
        e[k] = -bernoulli_poly(static_cast<unsigned>(k + 1), v) / Rat(static_cast<long>(k) * (k + 1));
    return exp(e);
}

// s / z, dropping the constant term.
template <class T>
TruncSeries<T> shift_down(const TruncSeries<T>& s)
{
    TruncSeries<T> out(s.order());
    for (std::size_t k = 1; k < s.order(); ++k) out[k - 1] = s[k];
    return out;
}

}  // namespace

RatSeries local_phi(int r, int order)
{
    check_r(r);
    RatSeries phi(static_cast<std::size_t>(order));
    for (int k = 1; k < order; ++k) {
        const Rat from_power = -Rat(binomial(r, k)) / Rat(r);
        const Rat from_log = make_rat(k % 2 == 1 ? 1 : -1, k);
        phi[k] = from_power + from_log;
    }
    return phi;
}

RatSeries local_u_series(int r, int order)
{
    check_r(r);
    if (order < 2) throw std::invalid_argument("local_u_series: order must be at least 2");
    const RatSeries phi = local_phi(r, order + 2);
    if (phi[1] != 0 || phi[2] != Rat(-r) / 2) throw std::logic_error("local_phi: unexpected leading term");
    // phi = -(r/2) u^2 h(u), s = u sqrt(h).
    RatSeries h(static_cast<std::size_t>(order));
    for (int k = 0; k < order; ++k) h[k] = phi[k + 2] / (Rat(-r) / 2);
    const RatSeries root = pow(h, make_rat(1, 2));
    RatSeries s(static_cast<std::size_t>(order));
    for (int k = 1; k < order; ++k) s[k] = root[k - 1];
    return lagrange_invert(s);
}

VSeries local_odd_expansion(int r, int order, int branch)
{
    if (branch != 1 && branch != -1) throw std::invalid_argument("local_odd_expansion: branch must be +1 or -1");
    if (order < 0) throw std::invalid_argument("local_odd_expansion: negative order");
    const RatSeries t = local_u_series(r, 2 * order + 3);
    // y(z)/y_i - 1 = t(b alpha z); odd part is b alpha z sum_j t_{2j+1} alpha^{2j} z^{2j},
    // and alpha^{2j} (2j+1)!!/(2r)^j = (-1)^j (2j+1)!!/r^{2j}.
    VSeries v;
    v.r = r;
    for (int j = 0; j <= order; ++j) {
        Rat x = t[2 * j + 1] * double_factorial(2 * j + 1) / pow(Rat(r), 2L * j);
        if (j % 2 == 1) x = -x;
        if (branch == -1) x = -x;
        v.coefficients.push_back(x);
    }
    return v;
}

VSeries v_bernoulli(int r, int order)
{
    check_r(r);
    if (order < 0) throw std::invalid_argument("v_bernoulli: negative order");
    const RatSeries e = bernoulli_exponential(make_rat(1, r), order + 1);
    VSeries v;
    v.r = r;
    v.coefficients = e.coefficients();
    return v;
}

std::vector<CycExt> u_matrix_direct(int r, int i1, int i2, int order)
{
    check_r(r);
    if (i1 < 0 || i1 >= r || i2 < 0 || i2 >= r) throw std::invalid_argument("u_matrix_direct: index out of range");
    if (order < 0) throw std::invalid_argument("u_matrix_direct: negative order");
    const std::size_t N = static_cast<std::size_t>(2 * order + 2);
    const RatSeries t = local_u_series(r, static_cast<int>(N) + 1);
    const CycExt alpha = CycExt::alpha(r);
    std::vector<CycExt> U(static_cast<std::size_t>(order) + 1, typed(r, 0));
    auto grade = [&](int k, const CycExt& coeff) -> CycExt {
        // U_k = -(2k-3)!! [z^{2k-2}] Y_even / (2r)^k
        return typed(r, -double_factorial(2 * k - 3) / pow(Rat(2 * r), k)) * coeff;
    };
    if (i1 == i2) {
        // u = alpha z w(z), Y = (w + z w')/(z^2 w^2).
        CycSeries w(N);
        CycExt ap = typed(r, 1);
        for (std::size_t k = 0; k < N; ++k) {
            w[k] = typed(r, t[k + 1]) * ap;
            ap *= alpha;
        }
        CycSeries zw(N);
        const CycSeries dw = derivative(w);
        for (std::size_t k = 1; k < N; ++k) zw[k] = dw[k - 1];
        const CycSeries Z = (w + zw) * reciprocal(w * w);
        for (int k = 0; k <= order; ++k) U[k] = grade(k, Z[2 * k]);
    } else {
        const CycExt rho = CycExt::zeta(r, i2 - i1);
        CycSeries u(N);
        CycExt ap = typed(r, 1);
        for (std::size_t k = 0; k < N; ++k) {
            u[k] = typed(r, t[k]) * ap;
            ap *= alpha;
        }
        CycSeries den = CycSeries::constant(typed(r, 1) - rho, N) - u * rho;
        den = den * den;
        const CycSeries Y = derivative(u) * reciprocal(den) * (alpha * rho);
        for (int k = 1; k <= order; ++k) U[k] = grade(k, Y[2 * k - 2]);
    }
    return U;
}

std::vector<CycExt> u_matrix_bernoulli(int r, int i1, int i2, int order)
{
    check_r(r);
    if (i1 < 0 || i1 >= r || i2 < 0 || i2 >= r) throw std::invalid_argument("u_matrix_bernoulli: index out of range");
    if (order < 0) throw std::invalid_argument("u_matrix_bernoulli: negative order");
    std::vector<CycExt> U(static_cast<std::size_t>(order) + 1, typed(r, 0));
    for (int c = 0; c < r; ++c) {
        const RatSeries e = bernoulli_exponential(make_rat(c, r), order + 1);
        const CycExt phase = CycExt::zeta(r, static_cast<long>(c) * (i2 - i1)) * typed(r, make_rat(1, r));
        for (int k = 0; k <= order; ++k) U[k] += typed(r, e[k]) * phase;
    }
    return U;
}

XiSeries xi_tilde(int r, int a, int order)
{
    check_r(r);
    if (a < 0 || a >= r) throw std::invalid_argument("xi_tilde: index out of range");
    if (order < 0) throw std::invalid_argument("xi_tilde: negative order");
    XiSeries xi;
    xi.r = r;
    xi.a = a;
    const int b = r - a - 1;
    for (int n = 0; n <= order; ++n) {
        const Rat base(static_cast<long>(r) * n + b);
        xi.closed_form.push_back(pow(base, n) / Rat(factorial(static_cast<unsigned long>(n))));
    }
    // v = y^r solves q = v e^{-r v} with q = e^{rx}; y^b = e^{bx} e^{b v}.
    const std::size_t N = static_cast<std::size_t>(order) + 2;
    RatSeries lhs(N);
    {
        RatSeries e(N);
        e[1] = -r;
        const RatSeries ex = exp(e);
        for (std::size_t k = 1; k < N; ++k) lhs[k] = ex[k - 1];
    }
    const RatSeries v = lagrange_invert(lhs);
    const RatSeries num = exp(v * Rat(b));
    const RatSeries den = RatSeries::constant(1, N) - v * Rat(r);
    const RatSeries direct = num * reciprocal(den);
    for (int n = 0; n <= order; ++n) xi.direct.push_back(direct[n]);

    // Idempotent sum, as series in w = r^{1/r} y.
    const std::size_t M = static_cast<std::size_t>(r) * (order + 2);
    CycSeries sum(M), expect(M);
    for (int i = 0; i < r; ++i) {
        const CycExt phase = CycExt::zeta(r, -static_cast<long>(a + 1) * i);
        for (std::size_t m = 0; m < M; ++m) sum[m] += phase * CycExt::zeta(r, -static_cast<long>(i) * static_cast<long>(m));
    }
    for (std::size_t m = static_cast<std::size_t>(b); m < M; m += static_cast<std::size_t>(r)) expect[m] = typed(r, r);
    xi.idempotent_sum_ok = (sum == expect);
    return xi;
}

// RootScaled

RootScaled::RootScaled(int r, const CycExt& c, const Rat& q) : r_(r)
{
    check_r(r);
    const long n = floor_to_long(q);
    const Rat f = q - Rat(n);
    add_term(f, c * typed(r, pow(Rat(r), n)));
}

void RootScaled::add_term(const Rat& f, const CycExt& c)
{
    CycExt value = c * typed(r_, 1);
    auto it = terms_.find(f);
    if (it != terms_.end()) {
        it->second += value;
        if (it->second.is_zero()) terms_.erase(it);
    } else if (!value.is_zero()) {
        terms_.emplace(f, value);
    }
}

bool RootScaled::is_rational() const
{
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second.is_rational();
}

Rat RootScaled::rational_value() const
{
    if (!is_rational()) throw std::domain_error("RootScaled: not rational: " + str());
    return terms_.empty() ? Rat(0) : terms_.begin()->second.rational_value();
}

RootScaled RootScaled::inverse() const
{
    if (terms_.size() != 1) throw std::domain_error("RootScaled: only single terms are invertible");
    const auto& [f, c] = *terms_.begin();
    return RootScaled(r_, c.inverse(), -f);
}

RootScaled& RootScaled::operator+=(const RootScaled& o)
{
    if (o.r_ != r_ && !o.terms_.empty()) {
        if (terms_.empty()) r_ = o.r_;
        else throw std::invalid_argument("RootScaled: mismatched r");
    }
    for (const auto& [f, c] : o.terms_) add_term(f, c);
    return *this;
}

RootScaled& RootScaled::operator*=(const RootScaled& o)
{
    if (o.r_ != r_ && !o.terms_.empty() && !terms_.empty()) throw std::invalid_argument("RootScaled: mismatched r");
    RootScaled out(terms_.empty() ? o.r_ : r_);
    for (const auto& [f1, c1] : terms_)
        for (const auto& [f2, c2] : o.terms_) {
            Rat f = f1 + f2;
            CycExt c = c1 * c2;
            if (f >= 1) {
                f -= 1;
                c *= typed(out.r_, out.r_);
            }
            out.add_term(f, c);
        }
    *this = std::move(out);
    return *this;
}

std::string RootScaled::str() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [f, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (f != 0) os << "*" << r_ << "^(" << to_string(f) << ")";
    }
    return os.str();
}

// Idempotent-basis theory

GiventalTheory<CycExt> local_idempotent_theory(int r, int degree)
{
    check_r(r);
    if (degree < 0) throw std::invalid_argument("local_idempotent_theory: negative degree");
    const int order = degree + 1;
    GiventalTheory<CycExt> th;
    th.basis = r;
    th.omega = [r](int g, const std::vector<int>& idx) -> CycExt {
        for (int i : idx)
            if (i != idx.front()) return typed(r, 0);
        const long e = 2L * g + static_cast<long>(idx.size()) - 2;
        return typed(r, pow(Rat(r), e)) * CycExt::zeta(r, -e * idx.front());
    };
    th.eta_inverse = identity_matrix<CycExt>(r);
    MatrixSeries<CycExt> R(order, Matrix<CycExt>(r, std::vector<CycExt>(r, typed(r, 0))));
    for (int i1 = 0; i1 < r; ++i1)
        for (int i2 = 0; i2 < r; ++i2) {
            const auto U = u_matrix_direct(r, i1, i2, degree);
            for (int k = 0; k < order; ++k) R[k][i2][i1] = U[k];
        }
    th.r_inverse = invert_matrix_series(R);
    const VSeries V = local_odd_expansion(r, degree);
    const RatSeries inv_v = reciprocal(RatSeries(V.coefficients, static_cast<std::size_t>(order)));
    th.translation.assign(order + 1, std::vector<CycExt>(r, typed(r, 0)));
    for (int k = 1; k < order; ++k)
        for (int i = 0; i < r; ++i)
            th.translation[k + 1][i] = CycExt::zeta(r, i) * typed(r, -inv_v[k] / Rat(r));
    return th;
}

CycExt local_idempotent_correlator(int r, int g, const std::vector<std::pair<int, int>>& pairs)
{
    check_r(r);
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GiventalEngine<CycExt>>> engines;
    const GiventalEngine<CycExt>* engine = nullptr;
    {
        std::lock_guard lock(mutex);
        auto& slot = engines[r];
        if (!slot) slot = std::make_unique<GiventalEngine<CycExt>>(local_idempotent_theory(r, kMaxGraphDimension));
        engine = slot.get();
    }
    return engine->correlator(g, pairs) * typed(r, 1);
}

namespace {

// Visits every tuple in {0..r-1}^n.
void for_each_tuple(int r, int n, const std::function<void(const std::vector<int>&)>& visit)
{
    std::vector<int> idx(n, 0);
    while (true) {
        visit(idx);
        int j = 0;
        while (j < n && ++idx[j] == r) idx[j++] = 0;
        if (j == n) break;
    }
}

}  // namespace

CycExt coh_idempotent_correlator(int r, int g, const std::vector<std::pair<int, int>>& pairs)
{
    check_r(r);
    const int n = static_cast<int>(pairs.size());
    CycExt total = typed(r, 0);
    for_each_tuple(r, n, [&](const std::vector<int>& a) {
        std::vector<Insertion> ins;
        for (int j = 0; j < n; ++j) ins.emplace_back(a[j], pairs[j].second);
        const Rat c = givental_correlator(r, g, ins);
        if (c == 0) return;
        CycExt term = typed(r, c);
        for (int j = 0; j < n; ++j) term *= CycExt::zeta(r, -static_cast<long>(a[j] + 1) * pairs[j].first);
        total += term;
    });
    return total;
}

RootScaled tr_correlator(int r, int g, const std::vector<std::pair<int, int>>& pairs)
{
    const int n = static_cast<int>(pairs.size());
    const long e = 2L * g + n - 2;
    RootScaled out(r, local_idempotent_correlator(r, g, pairs), Rat(e) + make_rat(e, r));
    const CycExt alpha = CycExt::alpha(r);
    for (const auto& [i, d] : pairs) {
        // (-2r)^{d + 1/2} = (-2r)^d alpha r
        out *= RootScaled(r, typed(r, pow(Rat(-2 * r), d)) * alpha, 1).inverse();
    }
    return out;
}

ScalingReport scaling_identity_check(int g, int r, const std::vector<Insertion>& pairs)
{
    check_r(r);
    const int n = static_cast<int>(pairs.size());
    const CycExt alpha = CycExt::alpha(r);
    ScalingReport rep;
    rep.lhs = RootScaled(r);
    for_each_tuple(r, n, [&](const std::vector<int>& idx) {
        std::vector<std::pair<int, int>> tr_pairs;
        for (int j = 0; j < n; ++j) tr_pairs.emplace_back(idx[j], pairs[j].second);
        RootScaled term = tr_correlator(r, g, tr_pairs);
        if (term.is_zero()) return;
        for (int j = 0; j < n; ++j) {
            const auto [a, d] = pairs[j];
            // r^{1/2} J^{(a+1)i} * I sqrt2 r^{-(a+1)/r} (-2)^d, with I sqrt2 = alpha r^{1/2}
            const CycExt c = CycExt::zeta(r, static_cast<long>(a + 1) * idx[j]) * alpha * typed(r, pow(Rat(-2), d));
            term *= RootScaled(r, c, Rat(1) - make_rat(a + 1, r));
        }
        rep.lhs += term;
    });
    long asum = 0, dsum = 0;
    for (const auto& [a, d] : pairs) {
        asum += a;
        dsum += d;
    }
    rep.rhs = RootScaled(r, typed(r, givental_correlator(r, g, pairs)),
                         Rat(2L * g + 2L * n - 2 - dsum) + make_rat(2L * g - 2 - asum, r));
    rep.holds = rep.lhs == rep.rhs;
    return rep;
}

namespace {

void for_each_k(int n, int k_bound, const std::function<void(const std::vector<int>&)>& visit)
{
    std::vector<int> k(n, 1);
    while (true) {
        visit(k);
        int j = 0;
        while (j < n && ++k[j] > k_bound) k[j++] = 1;
        if (j == n) break;
    }
}

void check_gn(int g, int n)
{
    if (g < 0 || n < 1 || 2 * g - 2 + n <= 0)
        throw std::invalid_argument("unstable (g, n) = (" + std::to_string(g) + ", " + std::to_string(n) + ")");
}

}  // namespace

CoefficientTable doss_assemble(int g, int r, int n, int k_bound)
{
    check_r(r);
    check_gn(g, n);
    const int dim = 3 * g - 3 + n;
    std::vector<XiSeries> xi;
    for (int a = 0; a < r; ++a) xi.push_back(xi_tilde(r, a, k_bound / r + 1));
    const CycExt alpha = CycExt::alpha(r);
    std::map<std::vector<Insertion>, RootScaled> tr_flat;
    auto tr_tilde = [&](const std::vector<Insertion>& ad) -> RootScaled {
        auto it = tr_flat.find(ad);
        if (it != tr_flat.end()) return it->second;
        RootScaled sum(r);
        for_each_tuple(r, n, [&](const std::vector<int>& idx) {
            std::vector<std::pair<int, int>> p;
            for (int j = 0; j < n; ++j) p.emplace_back(idx[j], ad[j].second);
            RootScaled t = tr_correlator(r, g, p);
            if (t.is_zero()) return;
            CycExt phase = typed(r, 1);
            for (int j = 0; j < n; ++j) phase *= CycExt::zeta(r, static_cast<long>(ad[j].first + 1) * idx[j]);
            sum += t * RootScaled(r, phase, 0);
        });
        return tr_flat.emplace(ad, sum).first->second;
    };
    CoefficientTable out;
    for_each_k(n, k_bound, [&](const std::vector<int>& k) {
        const Profile prof(g, r, k);
        if (!prof.valid()) return;
        RootScaled leaves(r, typed(r, 1), 0);
        for (int j = 0; j < n; ++j) {
            const int a = prof.a(j);
            // I sqrt2 r^{1/2 - (a+1)/r} = alpha r^{1 - (a+1)/r}
            leaves *= RootScaled(r, alpha * typed(r, xi[a].direct[prof.p(j)] * k[j]), Rat(1) - make_rat(a + 1, r));
        }
        RootScaled total(r);
        std::vector<int> d(n, 0);
        std::function<void(int, int)> rec = [&](int j, int left) {
            if (j == n) {
                std::vector<Insertion> ad;
                Rat w = 1;
                for (int i = 0; i < n; ++i) {
                    ad.emplace_back(prof.a(i), d[i]);
                    w *= pow(Rat(-2 * k[i]), d[i]);
                }
                const RootScaled t = tr_tilde(ad);
                if (!t.is_zero()) total += t * RootScaled(r, typed(r, w), 0);
                return;
            }
            for (int x = 0; x <= left; ++x) {
                d[j] = x;
                rec(j + 1, left - x);
            }
            d[j] = 0;
        };
        rec(0, dim);
        total *= leaves;
        if (!total.is_rational())
            throw std::logic_error("doss_assemble: coefficient for " + prof.str() + " is not rational: " + total.str());
        out.emplace(k, total.rational_value());
    });
    return out;
}

CoefficientTable eo_direct(int g, int n, int r, int k_bound)
{
    check_r(r);
    if (!((g == 0 && n == 3) || (g == 1 && n == 1)))
        throw std::invalid_argument("eo_direct: only (g, n) = (0, 3) and (1, 1) are supported");
    if (k_bound < 1) throw std::invalid_argument("eo_direct: k_bound must be positive");
    // Global coordinate w = r^{1/r} y: X = e^{x + log(r)/r} = w e^{-w^r/r},
    // branch points w_i = J^i, omega_{0,1} = w dx up to the factor r^{-1/r}.
    const int M = k_bound;  // w-degrees 0..M-1 contribute to X-degrees <= M
    const std::size_t N = 8;
    const RatSeries t = local_u_series(r, static_cast<int>(N));
    const RatSeries t_minus = scale_argument(t, Rat(-1));

    struct Local {
        // Indexed by w-degree m.
        std::vector<CycSeries> n1, bp, bm;
        CycSeries d1, dwp, dwm;
    };

    auto local_at = [&](int i) -> std::vector<CycExt> {
        const CycExt Ji = CycExt::zeta(r, i);
        auto lift = [&](const RatSeries& s) {
            return map_coefficients<CycExt>(s, [&](const Rat& x) { return typed(r, x); });
        };
        const CycSeries one = CycSeries::constant(typed(r, 1), N);
        const CycSeries wp = (one + lift(t)) * Ji;
        const CycSeries wm = (one + lift(t_minus)) * Ji;
        const CycSeries dwp = derivative(wp);
        const CycSeries dwm = derivative(wm);
        const CycSeries d1 = shift_down(wp - wm);
        const CycSeries ip = reciprocal(wp);
        const CycSeries im = reciprocal(wm);
        std::vector<CycSeries> pow_p{one}, pow_m{one};
        for (int m = 1; m <= M + 2; ++m) {
            pow_p.push_back(pow_p.back() * ip);
            pow_m.push_back(pow_m.back() * im);
        }
        std::vector<CycSeries> n1, bp, bm;
        for (int m = 0; m < M; ++m) {
            n1.push_back(shift_down(pow_p[m + 1] - pow_m[m + 1]));
            bp.push_back(dwp * pow_p[m + 2] * typed(r, m + 1));
            bm.push_back(dwm * pow_m[m + 2] * typed(r, m + 1));
        }
        // Kernel K = int_{s z}^{z} B(w0, .) / (2 (omega01(s z) - omega01(z))). This
        // orientation reproduces the r = 1 Hurwitz values (the other one gives (-1)^n times).
        const CycExt half_r = typed(r, Rat(1) / Rat(2 * r));
        std::vector<CycExt> coeffs;
        if (g == 0) {
            // K = N1 / (2 r zeta D1); residue of K (B(z,w1) B(sz,w2) + B(z,w2) B(sz,w1)).
            const CycSeries k_den = reciprocal(d1);
            for (int m0 = 0; m0 < M; ++m0) {
                const CycSeries kern = n1[m0] * k_den * half_r;
                for (int m1 = 0; m1 < M; ++m1)
                    for (int m2 = 0; m2 < M; ++m2) {
                        const CycSeries f = kern * (bp[m1] * bm[m2] + bp[m2] * bm[m1]);
                        coeffs.push_back(f[0]);
                    }
            }
        } else {
            // B(z, sz) = dw+ dw- / (zeta^2 D1^2).
            const CycSeries inv_d1 = reciprocal(d1);
            const CycSeries inv_d1_3 = inv_d1 * inv_d1 * inv_d1;
            for (int m0 = 0; m0 < M; ++m0) {
                const CycSeries f = n1[m0] * dwp * dwm * inv_d1_3 * half_r;
                coeffs.push_back(f[2]);
            }
        }
        return coeffs;
    };

    std::vector<std::future<std::vector<CycExt>>> parts;
    for (int i = 0; i < r; ++i) parts.push_back(std::async(std::launch::async, local_at, i));
    std::vector<CycExt> c;
    for (auto& f : parts) {
        const auto v = f.get();
        if (c.empty()) c.assign(v.size(), typed(r, 0));
        for (std::size_t j = 0; j < v.size(); ++j) c[j] += v[j];
    }
    std::vector<Rat> cw;
    for (const CycExt& x : c) {
        if (!x.is_rational()) throw std::logic_error("eo_direct: branch sum is not rational: " + x.str());
        cw.push_back(x.rational_value());
    }

    // w^m dw in terms of X^k dx: w(X)^m w'(X) X.
    const std::size_t L = static_cast<std::size_t>(k_bound) + 2;
    RatSeries Xw(L);
    {
        RatSeries e(L);
        if (static_cast<std::size_t>(r) < L) e[r] = make_rat(-1, r);
        const RatSeries ex = exp(e);
        for (std::size_t k = 1; k < L; ++k) Xw[k] = ex[k - 1];
    }
    const RatSeries wX = lagrange_invert(Xw);
    const RatSeries dwX = derivative(wX);
    std::vector<std::vector<Rat>> conv(M, std::vector<Rat>(k_bound + 1, Rat(0)));
    RatSeries wpow = RatSeries::constant(1, L);
    for (int m = 0; m < M; ++m) {
        const RatSeries f = wpow * dwX;
        for (int k = 1; k <= k_bound; ++k) conv[m][k] = f[k - 1];
        wpow = wpow * wX;
    }

    CoefficientTable out;
    for_each_k(n, k_bound, [&](const std::vector<int>& k) {
        Rat value = 0;
        if (n == 3) {
            for (int m0 = 0; m0 < M; ++m0)
                for (int m1 = 0; m1 < M; ++m1)
                    for (int m2 = 0; m2 < M; ++m2) {
                        const Rat& cc = cw[(static_cast<std::size_t>(m0) * M + m1) * M + m2];
                        if (cc == 0) continue;
                        value += cc * conv[m0][k[0]] * conv[m1][k[1]] * conv[m2][k[2]];
                    }
        } else {
            for (int m0 = 0; m0 < M; ++m0) value += cw[m0] * conv[m0][k[0]];
        }
        const Profile prof(g, r, k);
        if (!prof.valid()) {
            if (value != 0)
                throw std::logic_error("eo_direct: nonzero coefficient off the selection rule at " + prof.str());
            return;
        }
        out.emplace(k, value * pow(Rat(r), prof.m()));
    });
    return out;
}

// Reports

namespace {

template <class A, class B>
std::string first_mismatch(const std::vector<A>& x, const std::vector<B>& y, const std::string& label)
{
    for (std::size_t j = 0; j < x.size() && j < y.size(); ++j)
        if (!(x[j] == y[j])) {
            std::ostringstream os;
            os << label << "[" << j << "]";
            return os.str();
        }
    if (x.size() != y.size()) return label + ": length";
    return "";
}

LemmaCheck make(const std::string& name, int r, int order, const std::string& mismatch)
{
    return LemmaCheck{name, r, order, mismatch.empty(), mismatch};
}

}  // namespace

std::vector<LemmaCheck> verify_lemmas(int r, int order)
{
    check_r(r);
    std::vector<LemmaCheck> out;
    const VSeries direct = local_odd_expansion(r, order);
    const VSeries bern = v_bernoulli(r, order);
    out.push_back(make("odd part of y vs Bernoulli exponential", r, order,
                       first_mismatch(direct.coefficients, bern.coefficients, "V")));
    {
        const VSeries other = local_odd_expansion(r, order, -1);
        std::vector<Rat> neg;
        for (const Rat& x : bern.coefficients) neg.push_back(-x);
        out.push_back(make("opposite branch flips every V_j", r, order, first_mismatch(other.coefficients, neg, "V")));
    }
    {
        std::string mm;
        for (int i1 = 0; i1 < r && mm.empty(); ++i1)
            for (int i2 = 0; i2 < r && mm.empty(); ++i2)
                mm = first_mismatch(u_matrix_direct(r, i1, i2, order), u_matrix_bernoulli(r, i1, i2, order),
                                    "U(" + std::to_string(i1) + "," + std::to_string(i2) + ")");
        out.push_back(make("two-point function vs Bernoulli sum", r, order, mm));
    }
    {
        std::string mm;
        for (int i1 = 0; i1 < r && mm.empty(); ++i1)
            for (int i2 = 0; i2 < r && mm.empty(); ++i2)
                if (!(u_matrix_direct(r, i1, i2, 0)[0] == CycExt(i1 == i2 ? 1 : 0)))
                    mm = "U_0(" + std::to_string(i1) + "," + std::to_string(i2) + ")";
        if (direct.coefficients.front() != 1) mm += (mm.empty() ? "" : "; ") + std::string("V_0");
        out.push_back(make("U_0 = identity and V_0 = 1", r, 0, mm));
    }
    {
        std::string mm;
        for (int a = 0; a < r && mm.empty(); ++a) {
            const XiSeries xi = xi_tilde(r, a, order);
            if (!xi.idempotent_sum_ok) mm = "idempotent sum a=" + std::to_string(a);
            else mm = first_mismatch(xi.direct, xi.closed_form, "xi_" + std::to_string(a));
        }
        out.push_back(make("leaf functions vs Lambert closed form", r, order, mm));
    }
    if (r <= 3) {
        std::string mm;
        for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {0, 4}, {1, 1}}) {
            const int dim = 3 * g - 3 + n;
            std::vector<Insertion> cur;
            std::function<void(int, int)> rec = [&](int j, int left) {
                if (!mm.empty()) return;
                if (j == n) {
                    if (!scaling_identity_check(g, r, cur).holds) {
                        std::ostringstream os;
                        os << "g=" << g;
                        for (const auto& [a, d] : cur) os << " (" << a << "," << d << ")";
                        mm = os.str();
                    }
                    return;
                }
                for (int a = 0; a < r; ++a)
                    for (int d = 0; d <= left; ++d) {
                        const Insertion x{a, d};
                        if (!cur.empty() && x < cur.back()) continue;
                        cur.push_back(x);
                        rec(j + 1, left - d);
                        cur.pop_back();
                    }
            };
            rec(0, dim);
        }
        out.push_back(make("scaling identity for 3g-3+n <= 1", r, 1, mm));
    }
    return out;
}

std::string lemma_report_json(const std::vector<LemmaCheck>& checks)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks)
        arr.push_back({{"check", c.lemma},
                       {"r", c.r},
                       {"order", c.order},
                       {"verdict", c.holds ? "pass" : "fail"},
                       {"first_mismatch", c.first_mismatch}});
    return arr.dump(1);
}

std::string lemma_report_markdown(const std::vector<LemmaCheck>& checks)
{
    std::ostringstream os;
    os << "| check | r | order | verdict | first mismatch |\n|---|---|---|---|---|\n";
    for (const auto& c : checks)
        os << "| " << c.lemma << " | " << c.r << " | " << c.order << " | " << (c.holds ? "pass" : "fail") << " | "
           << (c.first_mismatch.empty() ? "-" : c.first_mismatch) << " |\n";
    return os.str();
}

}  // namespace rspin
