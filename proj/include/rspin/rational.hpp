#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace rspin {

/// Exact rational number. mpq_class keeps values canonical (reduced, positive
/// denominator) as long as every construction goes through make_rat().
using Rat = mpq_class;
using BigInt = mpz_class;

Rat make_rat(long num, long den = 1);
Rat make_rat(const BigInt& num, const BigInt& den = 1);

/// Prints "n" or "n/d"; never decimal.
std::string to_string(const Rat& q);

/// Parses "n" or "n/d".
Rat parse_rat(const std::string& text);

Rat pow(const Rat& base, long exponent);

BigInt factorial(unsigned long n);
BigInt binomial(long n, long k);

/// Odd double factorial (2k-1)!! extended to negative odd arguments by
/// n!! = (n+2)!!/(n+2): (-1)!! = 1, (-3)!! = -1.
Rat double_factorial(long n);

bool is_integer(const Rat& q);

/// Floor of q as a machine integer; throws if it does not fit.
long floor_to_long(const Rat& q);

}  // namespace rspin
