#include "rspin/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rspin {

namespace {

using Poly = std::vector<Rat>;

void trim(Poly& p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    trim(out);
    return out;
}

Poly poly_sub(Poly a, const Poly& b)
{
    if (a.size() < b.size()) a.resize(b.size(), Rat(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

// Quotient and remainder of a by b (b non-zero).
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b)
{
    trim(a);
    Poly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rat(0));
    while (!a.empty() && a.size() >= b.size()) {
        const size_t shift = a.size() - b.size();
        const Rat c = a.back() / b.back();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        trim(a);
    }
    trim(q);
    return {q, a};
}

Poly modulus_of(int r)
{
    const auto& phi = cyclotomic_polynomial(r);
    Poly out;
    out.reserve(phi.size());
    for (long c : phi) out.emplace_back(c);
    return out;
}

// Reduce p modulo the monic cyclotomic polynomial and pad to totient(r).
Poly reduce(Poly p, int r)
{
    const auto& phi = cyclotomic_polynomial(r);
    const size_t deg = phi.size() - 1;
    for (size_t d = p.size(); d-- > deg;) {
        const Rat c = p[d];
        if (c == 0) continue;
        for (size_t i = 0; i <= deg; ++i) p[d - deg + i] -= c * phi[i];
    }
    p.resize(deg, Rat(0));
    return p;
}

// Inverse of a non-zero p in Q[x]/(Phi_r) by the extended Euclidean algorithm.
Poly invert_mod(const Poly& p, int r)
{
    Poly a = p;
    trim(a);
    if (a.empty()) throw std::domain_error("CycExt: division by zero");
    Poly b = modulus_of(r);
    // Invariant: s_a * p == a, s_b * p == b (mod Phi_r)
    Poly s_a{Rat(1)};
    Poly s_b;
    while (!b.empty()) {
        auto [q, rem] = poly_divmod(a, b);
        Poly s_new = poly_sub(s_a, poly_mul(q, s_b));
        a = std::move(b);
        b = std::move(rem);
        s_a = std::move(s_b);
        s_b = std::move(s_new);
    }
    if (a.size() != 1) throw std::domain_error("CycExt: element is not invertible");
    const Rat lead = a[0];
    for (auto& c : s_a) c /= lead;
    return reduce(s_a, r);
}

bool all_zero(const Poly& p)
{
    for (const auto& c : p)
        if (c != 0) return false;
    return true;
}

}  // namespace

int totient(int n)
{
    if (n < 1) throw std::invalid_argument("totient: n must be positive");
    int result = n;
    int m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

const std::vector<long>& cyclotomic_polynomial(int n)
{
    static std::mutex mutex;
    static std::map<int, std::vector<long>> cache;
    if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n must be positive");
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    Poly num(static_cast<size_t>(n) + 1, Rat(0));
    num[0] = -1;
    num[static_cast<size_t>(n)] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        Poly den;
        for (long c : cyclotomic_polynomial(d)) den.emplace_back(c);
        num = poly_divmod(num, den).first;
    }
    std::vector<long> coeffs;
    for (const auto& c : num) coeffs.push_back(c.get_num().get_si());
    std::lock_guard lock(mutex);
    return cache.emplace(n, std::move(coeffs)).first->second;
}

CycExt::CycExt() : plain_{Rat(0)}, alpha_{Rat(0)} {}

CycExt::CycExt(long value) : plain_{Rat(value)}, alpha_{Rat(0)} {}

CycExt::CycExt(const Rat& value) : plain_{value}, alpha_{Rat(0)} {}

CycExt CycExt::scalar(int r, const Rat& value)
{
    CycExt out(value);
    out.adopt_r(r);
    return out;
}

CycExt CycExt::zeta(int r, long k)
{
    if (r < 1) throw std::invalid_argument("CycExt::zeta: r must be positive");
    long e = k % r;
    if (e < 0) e += r;
    Poly p(static_cast<size_t>(e) + 1, Rat(0));
    p[static_cast<size_t>(e)] = 1;
    CycExt out;
    out.r_ = r;
    out.plain_ = reduce(std::move(p), r);
    out.alpha_.assign(out.plain_.size(), Rat(0));
    return out;
}

CycExt CycExt::alpha(int r)
{
    if (r < 1) throw std::invalid_argument("CycExt::alpha: r must be positive");
    CycExt out = scalar(r, Rat(0));
    out.alpha_[0] = 1;
    return out;
}

void CycExt::adopt_r(int r)
{
    if (r_ == r) return;
    if (r_ != 0) throw std::invalid_argument("CycExt: mismatched r");
    if (r < 1) throw std::invalid_argument("CycExt: r must be positive");
    const Rat value = plain_[0];
    r_ = r;
    const auto deg = static_cast<size_t>(totient(r));
    plain_.assign(deg, Rat(0));
    alpha_.assign(deg, Rat(0));
    plain_[0] = value;
}


bool CycExt::is_zero() const { return all_zero(plain_) && all_zero(alpha_); }

bool CycExt::has_alpha() const { return !all_zero(alpha_); }

bool CycExt::is_rational() const
{
    if (has_alpha()) return false;
    for (size_t i = 1; i < plain_.size(); ++i)
        if (plain_[i] != 0) return false;
    return true;
}

Rat CycExt::rational_value() const
{
    if (!is_rational()) throw std::domain_error("CycExt: value is not rational: " + str());
    return plain_[0];
}

CycExt& CycExt::operator+=(const CycExt& other)
{
    if (other.r_ != 0) adopt_r(other.r_);
    if (r_ != 0 && other.r_ == 0) {
        plain_[0] += other.plain_[0];
        alpha_[0] += other.alpha_[0];
        return *this;
    }
    for (size_t i = 0; i < plain_.size(); ++i) {
        plain_[i] += other.plain_[i];
        alpha_[i] += other.alpha_[i];
    }
    return *this;
}

CycExt& CycExt::operator-=(const CycExt& other) { return *this += -other; }

CycExt CycExt::operator-() const
{
    CycExt out = *this;
    for (auto& c : out.plain_) c = -c;
    for (auto& c : out.alpha_) c = -c;
    return out;
}

CycExt& CycExt::operator*=(const CycExt& other)
{
    if (other.r_ == 0) {
        const Rat s = other.plain_[0];
        for (auto& c : plain_) c *= s;
        for (auto& c : alpha_) c *= s;
        return *this;
    }
    if (r_ == 0) {
        CycExt out = other;
        out *= *this;
        return *this = std::move(out);
    }
    if (r_ != other.r_) throw std::invalid_argument("CycExt: mismatched r");
    // (p + q a)(s + t a) = (ps + qt a^2) + (pt + qs) a, a^2 = -2/r
    Poly pp = poly_mul(plain_, other.plain_);
    Poly qt = poly_mul(alpha_, other.alpha_);
    Poly pt = poly_mul(plain_, other.alpha_);
    Poly qs = poly_mul(alpha_, other.plain_);
    const Rat alpha_sq = make_rat(-2, r_);
    if (pp.size() < qt.size()) pp.resize(qt.size(), Rat(0));
    for (size_t i = 0; i < qt.size(); ++i) pp[i] += alpha_sq * qt[i];
    if (pt.size() < qs.size()) pt.resize(qs.size(), Rat(0));
    for (size_t i = 0; i < qs.size(); ++i) pt[i] += qs[i];
    plain_ = reduce(std::move(pp), r_);
    alpha_ = reduce(std::move(pt), r_);
    return *this;
}

CycExt CycExt::inverse() const
{
    if (r_ == 0) {
        if (plain_[0] == 0) throw std::domain_error("CycExt: division by zero");
        return CycExt(Rat(1) / plain_[0]);
    }
    if (!has_alpha()) {
        CycExt out = *this;
        out.plain_ = invert_mod(plain_, r_);
        return out;
    }
    // 1/(p + q a) = (p - q a) / (p^2 + (2/r) q^2)
    CycExt p = *this;
    p.alpha_.assign(p.alpha_.size(), Rat(0));
    CycExt q = *this;
    q.plain_ = q.alpha_;
    q.alpha_.assign(q.alpha_.size(), Rat(0));
    CycExt norm = p * p + q * q * CycExt(make_rat(2, r_));
    CycExt conj = *this;
    for (auto& c : conj.alpha_) c = -c;
    return conj * norm.inverse();
}

bool operator==(const CycExt& a, const CycExt& b)
{
    if (a.r_ == b.r_) return a.plain_ == b.plain_ && a.alpha_ == b.alpha_;
    if (a.r_ != 0 && b.r_ != 0) throw std::invalid_argument("CycExt: mismatched r");
    const CycExt& typed = a.r_ != 0 ? a : b;
    const CycExt& untyped = a.r_ != 0 ? b : a;
    return typed.is_rational() && typed.plain_[0] == untyped.plain_[0];
}

std::string CycExt::str() const
{
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const Poly& part, const char* suffix) {
        for (size_t i = 0; i < part.size(); ++i) {
            if (part[i] == 0) continue;
            if (!first) os << " + ";
            first = false;
            os << to_string(part[i]);
            if (i == 1) os << "*J";
            if (i > 1) os << "*J^" << i;
            os << suffix;
        }
    };
    emit(plain_, "");
    emit(alpha_, "*alpha");
    if (first) os << "0";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycExt& x) { return os << x.str(); }

std::string to_string(const CycExt& x) { return x.str(); }

}  // namespace rspin
