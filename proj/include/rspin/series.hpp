#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rspin/cyclotomic.hpp"
#include "rspin/rational.hpp"

namespace rspin {

// Ring helpers shared by the generic containers.
inline bool is_zero(const Rat& x) { return x == 0; }
inline bool is_zero(const CycExt& x) { return x.is_zero(); }
inline Rat invert(const Rat& x)
{
    if (x == 0) throw std::domain_error("division by zero");
    return Rat(1) / x;
}
inline CycExt invert(const CycExt& x) { return x.inverse(); }
inline std::string ring_str(const Rat& x) { return to_string(x); }
inline std::string ring_str(const CycExt& x) { return x.str(); }

/**
 * Univariate power series truncated at an explicit order: coefficients of
 * z^0 .. z^{order-1} are stored, everything from z^order on is dropped.
 * Binary operations require equal orders.
 */
template <class T>
class TruncSeries {
public:
    explicit TruncSeries(std::size_t order = 1) : coeffs_(order, T(0))
    {
        if (order == 0) throw std::invalid_argument("TruncSeries: order must be positive");
    }

    TruncSeries(std::vector<T> coeffs, std::size_t order) : coeffs_(std::move(coeffs))
    {
        if (order == 0) throw std::invalid_argument("TruncSeries: order must be positive");
        coeffs_.resize(order, T(0));
    }

    static TruncSeries constant(const T& c, std::size_t order)
    {
        TruncSeries s(order);
        s.coeffs_[0] = c;
        return s;
    }

    /// The series z (zero if order == 1).
    static TruncSeries variable(std::size_t order)
    {
        TruncSeries s(order);
        if (order > 1) s.coeffs_[1] = T(1);
        return s;
    }

    std::size_t order() const { return coeffs_.size(); }
    const T& operator[](std::size_t k) const { return coeffs_.at(k); }
    T& operator[](std::size_t k) { return coeffs_.at(k); }
    const std::vector<T>& coefficients() const { return coeffs_; }

    TruncSeries& operator+=(const TruncSeries& o)
    {
        check_order(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }
    TruncSeries& operator-=(const TruncSeries& o)
    {
        check_order(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        return *this;
    }
    TruncSeries& operator*=(const T& c)
    {
        for (auto& x : coeffs_) x *= c;
        return *this;
    }
    TruncSeries operator-() const
    {
        TruncSeries out = *this;
        for (auto& x : out.coeffs_) x = -x;
        return out;
    }

    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    friend TruncSeries operator*(TruncSeries a, const T& c) { return a *= c; }
    friend TruncSeries operator*(const T& c, TruncSeries a) { return a *= c; }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b)
    {
        a.check_order(b);
        const std::size_t n = a.order();
        TruncSeries out(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (is_zero(a.coeffs_[i])) continue;
            for (std::size_t j = 0; i + j < n; ++j) {
                if (is_zero(b.coeffs_[j])) continue;
                out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return out;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b)
    {
        a.check_order(b);
        for (std::size_t k = 0; k < a.order(); ++k)
            if (!(a.coeffs_[k] == b.coeffs_[k])) return false;
        return true;
    }
    friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

    std::string str(const char* var = "z") const
    {
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (is_zero(coeffs_[k])) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << ring_str(coeffs_[k]) << ")";
            if (k > 0) os << "*" << var << "^" << k;
        }
        if (first) os << "0";
        os << " + O(" << var << "^" << coeffs_.size() << ")";
        return os.str();
    }

private:
    std::vector<T> coeffs_;

    void check_order(const TruncSeries& o) const
    {
        if (o.order() != order()) throw std::invalid_argument("TruncSeries: truncation orders differ");
    }
};

/// Same coefficients, new truncation order (drops or zero-pads).
template <class T>
TruncSeries<T> retruncate(const TruncSeries<T>& s, std::size_t order)
{
    return TruncSeries<T>(s.coefficients(), order);
}

template <class T>
TruncSeries<T> derivative(const TruncSeries<T>& s)
{
    TruncSeries<T> out(s.order());
    for (std::size_t k = 1; k < s.order(); ++k) out[k - 1] = s[k] * T(static_cast<long>(k));
    return out;
}

/// s(c z).
template <class T>
TruncSeries<T> scale_argument(const TruncSeries<T>& s, const T& c)
{
    TruncSeries<T> out = s;
    T power(1);
    for (std::size_t k = 0; k < s.order(); ++k) {
        out[k] = s[k] * power;
        power *= c;
    }
    return out;
}

/// Multiplicative inverse; the constant term must be invertible.
template <class T>
TruncSeries<T> reciprocal(const TruncSeries<T>& s)
{
    const T inv0 = invert(s[0]);
    TruncSeries<T> out(s.order());
    out[0] = inv0;
    for (std::size_t n = 1; n < s.order(); ++n) {
        T acc(0);
        for (std::size_t k = 1; k <= n; ++k) acc += s[k] * out[n - k];
        out[n] = -(acc * inv0);
    }
    return out;
}

/// exp(s) for s with zero constant term.
template <class T>
TruncSeries<T> exp(const TruncSeries<T>& s)
{
    if (!is_zero(s[0])) throw std::domain_error("exp: series must have zero constant term");
    TruncSeries<T> out(s.order());
    out[0] = T(1);
    // E' = s' E
    for (std::size_t n = 1; n < s.order(); ++n) {
        T acc(0);
        for (std::size_t k = 1; k <= n; ++k) acc += s[k] * out[n - k] * T(static_cast<long>(k));
        out[n] = acc * T(make_rat(1, static_cast<long>(n)));
    }
    return out;
}

/// log(s) for s with constant term 1.
template <class T>
TruncSeries<T> log(const TruncSeries<T>& s)
{
    if (!(s[0] == T(1))) throw std::domain_error("log: series must have constant term 1");
    TruncSeries<T> out(s.order());
    // n L_n = n s_n - sum_{k=1}^{n-1} k L_k s_{n-k}
    for (std::size_t n = 1; n < s.order(); ++n) {
        T acc = s[n] * T(static_cast<long>(n));
        for (std::size_t k = 1; k < n; ++k) acc -= out[k] * s[n - k] * T(static_cast<long>(k));
        out[n] = acc * T(make_rat(1, static_cast<long>(n)));
    }
    return out;
}

/// s^e for a non-negative integer e.
template <class T>
TruncSeries<T> pow(const TruncSeries<T>& s, unsigned e)
{
    TruncSeries<T> result = TruncSeries<T>::constant(T(1), s.order());
    TruncSeries<T> base = s;
    while (e != 0) {
        if (e & 1U) result = result * base;
        e >>= 1;
        if (e != 0) base = base * base;
    }
    return result;
}

/// s^q for constant term 1 and rational q, as exp(q log s).
template <class T>
TruncSeries<T> pow(const TruncSeries<T>& s, const Rat& q)
{
    return exp(log(s) * T(q));
}

/// f(g(z)); g must have zero constant term.
template <class T>
TruncSeries<T> compose(const TruncSeries<T>& f, const TruncSeries<T>& g)
{
    if (f.order() != g.order()) throw std::invalid_argument("compose: truncation orders differ");
    if (!is_zero(g[0])) throw std::domain_error("compose: inner series must have zero constant term");
    const std::size_t n = f.order();
    TruncSeries<T> out = TruncSeries<T>::constant(f[n - 1], n);
    for (std::size_t k = n - 1; k-- > 0;) {
        out = out * g;
        out[0] += f[k];
    }
    return out;
}

/**
 * Compositional inverse t of s: s(t(z)) = z + O(z^order).
 * s must have zero constant term and invertible linear coefficient.
 */
template <class T>
TruncSeries<T> lagrange_invert(const TruncSeries<T>& s)
{
    const std::size_t n = s.order();
    if (!is_zero(s[0])) throw std::domain_error("lagrange_invert: series must have zero constant term");
    if (n < 2 || is_zero(s[1])) throw std::domain_error("lagrange_invert: linear coefficient must be invertible");
    const T inv1 = invert(s[1]);
    TruncSeries<T> t(n);
    t[1] = inv1;
    // Fix t_k so that [z^k] s(t(z)) vanishes; it enters linearly as s_1 t_k.
    for (std::size_t k = 2; k < n; ++k) {
        const TruncSeries<T> st = compose(s, t);
        t[k] = -(st[k] * inv1);
    }
    return t;
}

template <class T>
TruncSeries<T> even_part(const TruncSeries<T>& s)
{
    TruncSeries<T> out = s;
    for (std::size_t k = 1; k < s.order(); k += 2) out[k] = T(0);
    return out;
}

template <class T>
TruncSeries<T> odd_part(const TruncSeries<T>& s)
{
    TruncSeries<T> out = s;
    for (std::size_t k = 0; k < s.order(); k += 2) out[k] = T(0);
    return out;
}

/// Maps every coefficient through f (e.g. Rat -> CycExt).
template <class U, class T, class F>
TruncSeries<U> map_coefficients(const TruncSeries<T>& s, F&& f)
{
    TruncSeries<U> out(s.order());
    for (std::size_t k = 0; k < s.order(); ++k) out[k] = f(s[k]);
    return out;
}

using RatSeries = TruncSeries<Rat>;
using CycSeries = TruncSeries<CycExt>;

}  // namespace rspin
