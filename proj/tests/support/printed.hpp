#ifndef CIPOLLA_TESTS_PRINTED_HPP_INCLUDED
#define CIPOLLA_TESTS_PRINTED_HPP_INCLUDED

#include <cipolla/big_real.hpp>

#include <string>

namespace cipolla::testing
{
/// Does `v` agree with a printed value mantissa x 10^exponent10, where the
/// mantissa is given as its digit string (first digit before the point)?
/// Accepts either rounding or truncation of the last printed digit, i.e.
/// v in [printed - ulp/2, printed + ulp).
inline bool matches_printed(const BigReal& v, std::string mantissa_digits, long exponent10)
{
    std::erase(mantissa_digits, ' ');
    std::erase(mantissa_digits, '.');
    const int k = static_cast<int>(mantissa_digits.size());
    DecimalDigits d = leading_digits(v, k + 4);
    if (d.exponent10 != exponent10)
        return false;
    BigInt ours(d.digits);
    BigInt printed(mantissa_digits);
    BigInt diff = ours - printed * 10000;
    return diff >= -5000 && diff < 10000;
}
} // namespace cipolla::testing

#endif // CIPOLLA_TESTS_PRINTED_HPP_INCLUDED
