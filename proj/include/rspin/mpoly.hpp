#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rspin/series.hpp"

namespace rspin {

using Exponent = std::vector<int>;

/**
 * Sparse multivariate polynomial in a fixed number of variables v_1..v_N.
 * Zero coefficients are never stored.
 */
template <class T>
class MPoly {
public:
    using TermMap = std::map<Exponent, T>;
    using Keep = std::function<bool(const Exponent&)>;

    explicit MPoly(std::size_t nvars = 0) : nvars_(nvars) {}

    static MPoly constant(std::size_t nvars, const T& c)
    {
        MPoly p(nvars);
        p.add_term(Exponent(nvars, 0), c);
        return p;
    }

    static MPoly variable(std::size_t nvars, std::size_t i)
    {
        Exponent e(nvars, 0);
        e.at(i) = 1;
        MPoly p(nvars);
        p.add_term(e, T(1));
        return p;
    }

    static MPoly monomial(const Exponent& e, const T& c)
    {
        MPoly p(e.size());
        p.add_term(e, c);
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    T coeff(const Exponent& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? T(0) : it->second;
    }

    void add_term(const Exponent& e, const T& c)
    {
        if (e.size() != nvars_) throw std::invalid_argument("MPoly: exponent length mismatch");
        if (rspin::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (inserted) return;
        it->second += c;
        if (rspin::is_zero(it->second)) terms_.erase(it);
    }

    MPoly& operator+=(const MPoly& o)
    {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o)
    {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    MPoly& operator*=(const T& c)
    {
        if (rspin::is_zero(c)) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, x] : terms_) x *= c;
        return *this;
    }
    MPoly operator-() const
    {
        MPoly out = *this;
        for (auto& [e, x] : out.terms_) x = -x;
        return out;
    }

    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(MPoly a, const T& c) { return a *= c; }
    friend MPoly operator*(const T& c, MPoly a) { return a *= c; }
    friend MPoly operator*(const MPoly& a, const MPoly& b) { return truncated_mul(a, b, nullptr); }

    /// Product keeping only exponents accepted by keep (all if keep is empty).
    friend MPoly truncated_mul(const MPoly& a, const MPoly& b, const Keep& keep)
    {
        a.check(b);
        MPoly out(a.nvars_);
        Exponent e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                if (keep && !keep(e)) continue;
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }

    friend bool operator==(const MPoly& a, const MPoly& b)
    {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    /// Drops terms rejected by keep.
    MPoly filtered(const Keep& keep) const
    {
        MPoly out(nvars_);
        for (const auto& [e, c] : terms_)
            if (keep(e)) out.terms_.emplace(e, c);
        return out;
    }

    MPoly derivative(std::size_t i) const
    {
        MPoly out(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e.at(i) == 0) continue;
            Exponent d = e;
            d[i] -= 1;
            out.add_term(d, c * T(static_cast<long>(e[i])));
        }
        return out;
    }

    /// Exact quotient by (v_i - v_j); throws std::domain_error on a remainder.
    MPoly divide_by_difference(std::size_t i, std::size_t j) const
    {
        if (i == j || i >= nvars_ || j >= nvars_) throw std::invalid_argument("MPoly: bad variable pair");
        MPoly rest = *this;
        MPoly quotient(nvars_);
        while (true) {
            // Leading term: largest power of v_i.
            auto lead = rest.terms_.end();
            for (auto it = rest.terms_.begin(); it != rest.terms_.end(); ++it)
                if (it->first[i] > 0 && (lead == rest.terms_.end() || it->first[i] > lead->first[i])) lead = it;
            if (lead == rest.terms_.end()) break;
            Exponent q = lead->first;
            const T c = lead->second;
            q[i] -= 1;
            quotient.add_term(q, c);
            rest.add_term(lead->first, -c);
            Exponent shifted = q;
            shifted[j] += 1;
            rest.add_term(shifted, c);
        }
        if (!rest.is_zero()) throw std::domain_error("MPoly: division by (v_i - v_j) is not exact");
        return quotient;
    }

    /// Invariance under every transposition of variables.
    bool is_symmetric() const
    {
        for (std::size_t i = 0; i + 1 < nvars_; ++i) {
            MPoly swapped(nvars_);
            for (const auto& [e, c] : terms_) {
                Exponent s = e;
                std::swap(s[i], s[i + 1]);
                swapped.terms_.emplace(s, c);
            }
            if (swapped != *this) return false;
        }
        return true;
    }

    std::string str(const char* var = "v") const
    {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first) os << " + ";
            first = false;
            os << "(" << ring_str(it->second) << ")";
            for (std::size_t k = 0; k < nvars_; ++k) {
                if (it->first[k] == 0) continue;
                os << "*" << var << (k + 1);
                if (it->first[k] > 1) os << "^" << it->first[k];
            }
        }
        return os.str();
    }

private:
    std::size_t nvars_;
    TermMap terms_;

    void check(const MPoly& o) const
    {
        if (o.nvars_ != nvars_) throw std::invalid_argument("MPoly: variable count mismatch");
    }
};

/**
 * log(1 + x) for x nilpotent modulo keep (every product eventually leaves the
 * kept region), summed until the powers of x vanish.
 */
template <class T>
MPoly<T> log1p_truncated(const MPoly<T>& x, const typename MPoly<T>::Keep& keep)
{
    MPoly<T> out(x.nvars());
    MPoly<T> power = x.filtered(keep);
    for (long k = 1; !power.is_zero(); ++k) {
        const T sign = (k % 2 == 1) ? T(1) : T(-1);
        out += power * (sign * T(make_rat(1, k)));
        power = truncated_mul(power, x, keep);
    }
    return out;
}

/// exp(x) - 1 for x nilpotent modulo keep.
template <class T>
MPoly<T> expm1_truncated(const MPoly<T>& x, const typename MPoly<T>::Keep& keep)
{
    MPoly<T> out(x.nvars());
    MPoly<T> power = x.filtered(keep);
    for (long k = 1; !power.is_zero(); ++k) {
        out += power;
        power = truncated_mul(power, x, keep) * T(make_rat(1, k + 1));
    }
    return out;
}

using RatPoly = MPoly<Rat>;

}  // namespace rspin
