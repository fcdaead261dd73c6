#ifndef CIPOLLA_BIG_REAL_HPP_INCLUDED
#define CIPOLLA_BIG_REAL_HPP_INCLUDED

#include <cipolla/bigint.hpp>
#include <cipolla/errors.hpp>

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace cipolla
{
/// Working precision, stored in bits, specified by callers in decimal digits.
class Precision
{
public:
    static constexpr double bits_per_digit = 3.321928094887362;

    static Precision digits(int d)
    {
        if (d < 1)
            throw DomainError("Precision: digits must be positive");
        return Precision(static_cast<mpfr_prec_t>(std::ceil(d * bits_per_digit)) + 4);
    }

    static constexpr Precision bits(mpfr_prec_t b)
    {
        return Precision(b);
    }

    constexpr mpfr_prec_t in_bits() const noexcept
    {
        return bits_;
    }

    int in_digits() const noexcept
    {
        return static_cast<int>(std::floor((bits_ - 4) / bits_per_digit));
    }

    Precision plus_digits(int d) const
    {
        return Precision(bits_ + static_cast<mpfr_prec_t>(std::ceil(d * bits_per_digit)));
    }

    friend constexpr bool operator==(Precision a, Precision b) noexcept
    {
        return a.bits_ == b.bits_;
    }

    friend constexpr Precision min(Precision a, Precision b) noexcept
    {
        return a.bits_ < b.bits_ ? a : b;
    }

private:
    constexpr explicit Precision(mpfr_prec_t b) : bits_(std::max<mpfr_prec_t>(b, MPFR_PREC_MIN)) {}

    mpfr_prec_t bits_;
};

/// Hard ceiling on any requested precision.
inline constexpr int kMaxDigits = 20000;

inline void require_digits(int digits, int min_digits = 1)
{
    if (digits < min_digits)
        throw DomainError("requested " + std::to_string(digits) + " digits, need at least "
                          + std::to_string(min_digits));
    if (digits > kMaxDigits)
        throw PrecisionExhausted("requested " + std::to_string(digits) + " digits exceeds ceiling of "
                                 + std::to_string(kMaxDigits));
}

/// Arbitrary-precision binary float (MPFR) carrying its own precision.
/// Binary operations round to the coarser operand precision; mixed
/// operations with machine numbers or integers use the BigReal's precision.
class BigReal
{
public:
    explicit BigReal(Precision p)
    {
        mpfr_init2(v_, p.in_bits());
        mpfr_set_zero(v_, 1);
    }

    BigReal(long v, Precision p) : BigReal(p)
    {
        mpfr_set_si(v_, v, MPFR_RNDN);
    }

    BigReal(int v, Precision p) : BigReal(static_cast<long>(v), p) {}

    BigReal(double v, Precision p) : BigReal(p)
    {
        mpfr_set_d(v_, v, MPFR_RNDN);
    }

    BigReal(const BigInt& v, Precision p) : BigReal(p)
    {
        mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
    }

    BigReal(const BigRational& v, Precision p) : BigReal(p)
    {
        mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
    }

    /// Decimal literal: "1e100", "39e29", "-2.5", "3.14159".
    static BigReal parse(const std::string& s, Precision p)
    {
        BigReal r(p);
        if (s.empty())
            throw DomainError("BigReal: cannot parse empty string");
        char* end = nullptr;
        mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
        if (end == nullptr || end == s.c_str() || *end != '\0')
            throw DomainError("BigReal: cannot parse '" + s + "'");
        return r;
    }

    BigReal(const BigReal& o)
    {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }

    BigReal(BigReal&& o) noexcept
    {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }

    BigReal& operator=(const BigReal& o)
    {
        if (this != &o)
        {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    BigReal& operator=(BigReal&& o) noexcept
    {
        mpfr_swap(v_, o.v_);
        return *this;
    }

    ~BigReal()
    {
        mpfr_clear(v_);
    }

    Precision precision() const noexcept
    {
        return Precision::bits(mpfr_get_prec(v_));
    }

    /// Copy rounded (or zero-extended) to another precision.
    BigReal at(Precision p) const
    {
        BigReal r(p);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    mpfr_srcptr get() const noexcept
    {
        return v_;
    }

    mpfr_ptr get() noexcept
    {
        return v_;
    }

    double to_double() const
    {
        return mpfr_get_d(v_, MPFR_RNDN);
    }

    long double to_long_double() const
    {
        return mpfr_get_ld(v_, MPFR_RNDN);
    }

    int sign() const noexcept
    {
        return mpfr_sgn(v_);
    }

    bool is_zero() const noexcept
    {
        return mpfr_zero_p(v_) != 0;
    }

    bool is_finite() const noexcept
    {
        return mpfr_number_p(v_) != 0;
    }

    /// Binary exponent e with 0.5 <= |x| / 2^e < 1.
    long exponent2() const noexcept
    {
        return mpfr_get_exp(v_);
    }

    /// Approximate log10 |x| (needs x != 0).
    double log10_abs() const
    {
        long e = 0;
        double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
        return std::log10(std::fabs(m)) + static_cast<double>(e) * 0.30102999566398120;
    }

    BigInt floor_int() const
    {
        BigInt z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
        return z;
    }

    BigInt round_int() const
    {
        BigInt z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
        return z;
    }

    /// Scientific notation with `significant` digits: "2.8752718639e+32".
    std::string to_sci(int significant) const
    {
        return format("%." + std::to_string(std::max(significant - 1, 0)) + "Re");
    }

    /// Fixed notation with `decimals` digits after the point.
    std::string to_fixed(int decimals) const
    {
        return format("%." + std::to_string(std::max(decimals, 0)) + "Rf");
    }

    BigReal operator-() const
    {
        BigReal r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

#define CIPOLLA_BIGREAL_BINOP(op, fn, fn_si, fn_d, fn_z)                                                   \
    friend BigReal operator op(const BigReal& a, const BigReal& b)                                         \
    {                                                                                                      \
        BigReal r(min(a.precision(), b.precision()));                                                      \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                                                   \
        return r;                                                                                          \
    }                                                                                                      \
    friend BigReal operator op(const BigReal& a, long b)                                                   \
    {                                                                                                      \
        BigReal r(a.precision());                                                                          \
        fn_si(r.v_, a.v_, b, MPFR_RNDN);                                                                   \
        return r;                                                                                          \
    }                                                                                                      \
    friend BigReal operator op(const BigReal& a, int b)                                                    \
    {                                                                                                      \
        return a op static_cast<long>(b);                                                                  \
    }                                                                                                      \
    friend BigReal operator op(const BigReal& a, double b)                                                 \
    {                                                                                                      \
        BigReal r(a.precision());                                                                          \
        fn_d(r.v_, a.v_, b, MPFR_RNDN);                                                                    \
        return r;                                                                                          \
    }                                                                                                      \
    friend BigReal operator op(const BigReal& a, const BigInt& b)                                          \
    {                                                                                                      \
        BigReal r(a.precision());                                                                          \
        fn_z(r.v_, a.v_, b.get_mpz_t(), MPFR_RNDN);                                                        \
        return r;                                                                                          \
    }                                                                                                      \
    BigReal& operator op##=(const BigReal& b)                                                              \
    {                                                                                                      \
        fn(v_, v_, b.v_, MPFR_RNDN);                                                                       \
        return *this;                                                                                      \
    }                                                                                                      \
    BigReal& operator op##=(long b)                                                                        \
    {                                                                                                      \
        fn_si(v_, v_, b, MPFR_RNDN);                                                                       \
        return *this;                                                                                      \
    }                                                                                                      \
    BigReal& operator op##=(int b)                                                                         \
    {                                                                                                      \
        fn_si(v_, v_, static_cast<long>(b), MPFR_RNDN);                                                    \
        return *this;                                                                                      \
    }                                                                                                      \
    BigReal& operator op##=(const BigInt& b)                                                               \
    {                                                                                                      \
        fn_z(v_, v_, b.get_mpz_t(), MPFR_RNDN);                                                            \
        return *this;                                                                                      \
    }

    CIPOLLA_BIGREAL_BINOP(+, mpfr_add, mpfr_add_si, mpfr_add_d, mpfr_add_z)
    CIPOLLA_BIGREAL_BINOP(-, mpfr_sub, mpfr_sub_si, mpfr_sub_d, mpfr_sub_z)
    CIPOLLA_BIGREAL_BINOP(*, mpfr_mul, mpfr_mul_si, mpfr_mul_d, mpfr_mul_z)
    CIPOLLA_BIGREAL_BINOP(/, mpfr_div, mpfr_div_si, mpfr_div_d, mpfr_div_z)
#undef CIPOLLA_BIGREAL_BINOP

    friend BigReal operator+(long a, const BigReal& b)
    {
        return b + a;
    }

    friend BigReal operator*(long a, const BigReal& b)
    {
        return b * a;
    }

    friend BigReal operator-(long a, const BigReal& b)
    {
        BigReal r(b.precision());
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }

    friend BigReal operator/(long a, const BigReal& b)
    {
        BigReal r(b.precision());
        mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }

    friend int compare(const BigReal& a, const BigReal& b)
    {
        return mpfr_cmp(a.v_, b.v_);
    }

    friend bool operator<(const BigReal& a, const BigReal& b)
    {
        return mpfr_less_p(a.v_, b.v_) != 0;
    }

    friend bool operator>(const BigReal& a, const BigReal& b)
    {
        return mpfr_greater_p(a.v_, b.v_) != 0;
    }

    friend bool operator<=(const BigReal& a, const BigReal& b)
    {
        return mpfr_lessequal_p(a.v_, b.v_) != 0;
    }

    friend bool operator>=(const BigReal& a, const BigReal& b)
    {
        return mpfr_greaterequal_p(a.v_, b.v_) != 0;
    }

    friend bool operator==(const BigReal& a, const BigReal& b)
    {
        return mpfr_equal_p(a.v_, b.v_) != 0;
    }

    friend bool operator<(const BigReal& a, long b)
    {
        return mpfr_cmp_si(a.v_, b) < 0;
    }

    friend bool operator>(const BigReal& a, long b)
    {
        return mpfr_cmp_si(a.v_, b) > 0;
    }

    friend bool operator<=(const BigReal& a, long b)
    {
        return mpfr_cmp_si(a.v_, b) <= 0;
    }

    friend bool operator>=(const BigReal& a, long b)
    {
        return mpfr_cmp_si(a.v_, b) >= 0;
    }

    friend std::ostream& operator<<(std::ostream& os, const BigReal& x)
    {
        return os << x.to_sci(std::max(x.precision().in_digits(), 1));
    }

private:
    std::string format(const std::string& fmt) const
    {
        char* buf = nullptr;
        if (mpfr_asprintf(&buf, fmt.c_str(), v_) < 0 || buf == nullptr)
            throw std::runtime_error("BigReal: formatting failed");
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    mpfr_t v_;
};

namespace detail
{
template <class F>
BigReal unary(const BigReal& x, F f)
{
    BigReal r(x.precision());
    f(r.get(), x.get(), MPFR_RNDN);
    return r;
}
} // namespace detail

inline BigReal abs(const BigReal& x)
{
    return detail::unary(x, mpfr_abs);
}

inline BigReal log(const BigReal& x)
{
    return detail::unary(x, mpfr_log);
}

inline BigReal exp(const BigReal& x)
{
    return detail::unary(x, mpfr_exp);
}

inline BigReal sqrt(const BigReal& x)
{
    return detail::unary(x, mpfr_sqrt);
}

inline BigReal pow(const BigReal& x, long k)
{
    BigReal r(x.precision());
    mpfr_pow_si(r.get(), x.get(), k, MPFR_RNDN);
    return r;
}

inline BigReal pow(const BigReal& x, const BigReal& e)
{
    BigReal r(min(x.precision(), e.precision()));
    mpfr_pow(r.get(), x.get(), e.get(), MPFR_RNDN);
    return r;
}

inline const BigReal& max(const BigReal& a, const BigReal& b)
{
    return a < b ? b : a;
}

inline const BigReal& min(const BigReal& a, const BigReal& b)
{
    return b < a ? b : a;
}

inline BigReal pi(Precision p)
{
    BigReal r(p);
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

/// Euler-Mascheroni constant, correctly rounded by MPFR.
inline BigReal euler_gamma(Precision p)
{
    BigReal r(p);
    mpfr_const_euler(r.get(), MPFR_RNDN);
    return r;
}

inline BigReal e_const(Precision p)
{
    return exp(BigReal(1L, p));
}

/// 2^k
inline BigReal pow2(long k, Precision p)
{
    BigReal r(1L, p);
    mpfr_mul_2si(r.get(), r.get(), k, MPFR_RNDN);
    return r;
}

/// Number of digits in the integer part of |x| (0 when |x| < 1).
inline std::size_t integer_digits(const BigReal& x)
{
    BigInt z = abs(x).floor_int();
    return sgn(z) == 0 ? 0 : decimal_digits(z);
}

/// The first `significant` decimal digits of x (no sign, point or exponent),
/// truncated rather than rounded, with the decimal exponent of the first.
struct DecimalDigits
{
    std::string digits;
    long exponent10 = 0;
};

inline DecimalDigits leading_digits(const BigReal& x, int significant)
{
    mpfr_exp_t e = 0;
    char* s = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(significant), x.get(), MPFR_RNDZ);
    std::string str(s);
    mpfr_free_str(s);
    if (!str.empty() && str[0] == '-')
        str.erase(0, 1);
    return {str, static_cast<long>(e) - 1};
}
} // namespace cipolla

#endif // CIPOLLA_BIG_REAL_HPP_INCLUDED
