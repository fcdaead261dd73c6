#ifndef CIPOLLA_BIGINT_HPP_INCLUDED
#define CIPOLLA_BIGINT_HPP_INCLUDED

#include <gmpxx.h>

#include <string>
#include <vector>

namespace cipolla
{
using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigInt factorial(unsigned long n)
{
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline BigInt binomial(unsigned long n, unsigned long k)
{
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline std::string to_decimal(const BigInt& v)
{
    return v.get_str(10);
}

inline BigInt from_decimal(const std::string& s)
{
    return BigInt(s, 10);
}

/// Number of decimal digits of |v| (1 for zero).
inline std::size_t decimal_digits(const BigInt& v)
{
    std::string s = BigInt(abs(v)).get_str(10);
    return s.size();
}

/// 0!, 1!, ..., n! computed once.
inline std::vector<BigInt> factorials_upto(unsigned long n)
{
    std::vector<BigInt> out(n + 1);
    out[0] = 1;
    for (unsigned long k = 1; k <= n; ++k)
        out[k] = out[k - 1] * k;
    return out;
}
} // namespace cipolla

#endif // CIPOLLA_BIGINT_HPP_INCLUDED
