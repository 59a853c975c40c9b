#include "rspin/rational.hpp"

#include <stdexcept>

namespace rspin {

Rat make_rat(long num, long den)
{
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat make_rat(const BigInt& num, const BigInt& den)
{
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rat& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rat(const std::string& text)
{
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return make_rat(BigInt(text), BigInt(1));
        return make_rat(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("not a rational number: '" + text + "'");
    }
}

Rat pow(const Rat& base, long exponent)
{
    if (exponent < 0) {
        if (base == 0) throw std::domain_error("zero to a negative power");
        return pow(Rat(1) / base, -exponent);
    }
    Rat result(1);
    Rat b = base;
    auto e = static_cast<unsigned long>(exponent);
    while (e != 0) {
        if (e & 1UL) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

BigInt factorial(unsigned long n)
{
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

BigInt binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

Rat double_factorial(long n)
{
    if (n % 2 == 0) throw std::invalid_argument("double_factorial: odd argument expected");
    if (n >= -1) {
        Rat out(1);
        for (long j = n; j > 1; j -= 2) out *= j;
        return out;
    }
    // n!! = (n+2)!! / (n+2)
    return double_factorial(n + 2) / Rat(n + 2);
}

bool is_integer(const Rat& q) { return q.get_den() == 1; }

long floor_to_long(const Rat& q)
{
    BigInt f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    if (!f.fits_slong_p()) throw std::overflow_error("rational out of machine range");
    return f.get_si();
}

}  // namespace rspin
