#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rspin/rational.hpp"

namespace rspin {

/// Integer coefficients (constant term first) of the n-th cyclotomic
/// polynomial. Memoized.
const std::vector<long>& cyclotomic_polynomial(int n);

/// Euler totient; the degree of the n-th cyclotomic polynomial.
int totient(int n);

/**
 * Element of Q(J)[alpha] / (alpha^2 + 2/r), with J a primitive r-th root of
 * unity reduced modulo the r-th cyclotomic polynomial.
 *
 * Stored as p(J) + q(J) * alpha with deg p, deg q < totient(r). The value
 * with r() == 0 is an untyped rational scalar; it combines with any r.
 * Combining two typed values with different r throws std::invalid_argument.
 */
class CycExt {
public:
    CycExt();
    CycExt(long value);  // NOLINT(google-explicit-constructor)
    CycExt(const Rat& value);  // NOLINT(google-explicit-constructor)

    static CycExt scalar(int r, const Rat& value);
    /// J^k for any integer k.
    static CycExt zeta(int r, long k);
    /// Formal square root of -2/r.
    static CycExt alpha(int r);

    int r() const { return r_; }
    bool is_zero() const;
    /// True when the element lies in Q (no J, no alpha).
    bool is_rational() const;
    bool has_alpha() const;
    /// Rational value; throws if !is_rational().
    Rat rational_value() const;

    /// Coefficient of J^k (k < totient) in the alpha-free / alpha part.
    const std::vector<Rat>& plain_part() const { return plain_; }
    const std::vector<Rat>& alpha_part() const { return alpha_; }

    /// Multiplicative inverse; throws std::domain_error for zero divisors.
    CycExt inverse() const;

    CycExt& operator+=(const CycExt& other);
    CycExt& operator-=(const CycExt& other);
    CycExt& operator*=(const CycExt& other);
    CycExt& operator/=(const CycExt& other) { return *this *= other.inverse(); }
    CycExt operator-() const;

    friend CycExt operator+(CycExt a, const CycExt& b) { return a += b; }
    friend CycExt operator-(CycExt a, const CycExt& b) { return a -= b; }
    friend CycExt operator*(CycExt a, const CycExt& b) { return a *= b; }
    friend CycExt operator/(CycExt a, const CycExt& b) { return a /= b; }
    friend bool operator==(const CycExt& a, const CycExt& b);
    friend bool operator!=(const CycExt& a, const CycExt& b) { return !(a == b); }

    std::string str() const;

private:
    int r_ = 0;
    std::vector<Rat> plain_;
    std::vector<Rat> alpha_;

    void adopt_r(int r);
};

std::ostream& operator<<(std::ostream& os, const CycExt& x);
std::string to_string(const CycExt& x);

}  // namespace rspin
