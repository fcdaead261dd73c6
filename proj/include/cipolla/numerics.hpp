#ifndef CIPOLLA_NUMERICS_HPP_INCLUDED
#define CIPOLLA_NUMERICS_HPP_INCLUDED

#include <cipolla/big_real.hpp>
#include <cipolla/errors.hpp>
#include <cipolla/polyengine.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace cipolla
{
/// Process-wide P_0..P_N table. Grows (by rebuilding) when a larger order is
/// requested; handed out as shared immutable snapshots.
inline std::shared_ptr<const PolynomialTable> shared_polynomials(int N)
{
    static std::mutex mutex;
    static std::shared_ptr<const PolynomialTable> table;
    std::lock_guard<std::mutex> lock(mutex);
    if (!table || table->max_index() < N)
    {
        int size = std::max(N, table ? 2 * table->max_index() : 16);
        table = std::make_shared<const PolynomialTable>(size);
    }
    return table;
}

namespace detail
{
inline constexpr int kEiGuardDigits = 12;

/// Exponential-integral series at the precision of y (y > 0). Also reports
/// log10 of the largest component so callers can detect cancellation.
inline BigReal ei_series(const BigReal& y, double& largest_log10)
{
    const Precision p = y.precision();
    BigReal sum(p);
    BigReal term = y; // y^k / k!
    for (long k = 1;; ++k)
    {
        if (k > 1)
        {
            term *= y;
            term /= k;
        }
        BigReal contrib = term / k;
        sum += contrib;
        // Positive terms; stop once they are negligible and decreasing.
        if (static_cast<double>(k) > y.to_double() && !sum.is_zero()
            && contrib.exponent2() < sum.exponent2() - static_cast<long>(p.in_bits()) - 2)
            break;
        if (k > 1000000)
            throw NoConvergence("Ei series did not terminate");
    }
    BigReal head = euler_gamma(p) + log(y);
    largest_log10 = std::max(sum.log10_abs(), head.is_zero() ? 0.0 : head.log10_abs());
    return head + sum;
}
} // namespace detail

/// Ei(y) for y > 0 to `digits` significant digits.
inline BigReal ei(const BigReal& y, int digits)
{
    require_digits(digits);
    if (y.sign() <= 0)
        throw DomainError("ei: argument must be positive");
    int guard = detail::kEiGuardDigits;
    for (int attempt = 0; attempt < 8; ++attempt)
    {
        require_digits(digits + guard);
        const Precision p = Precision::digits(digits + guard);
        double largest = 0;
        BigReal r = detail::ei_series(y.at(p), largest);
        if (!r.is_zero())
        {
            double lost = largest - r.log10_abs();
            if (lost < guard - 4)
                return r.at(Precision::digits(digits));
            guard += static_cast<int>(std::ceil(lost)) + 8;
        }
        else
        {
            guard *= 2;
        }
    }
    throw PrecisionExhausted("ei: cancellation could not be resolved");
}

/// li(x) = Ei(log x) on the branch x > 1.
inline BigReal li(const BigReal& x, int digits)
{
    require_digits(digits);
    if (x <= 1L)
        throw DomainError("li: argument must exceed 1");
    const Precision p = Precision::digits(digits + detail::kEiGuardDigits);
    return ei(log(x.at(p)), digits);
}

/// Terms P_{n-1}(y)/x^n for n = 1..N at precision p.
inline std::vector<BigReal> expansion_terms(const BigReal& x, const BigReal& y, int N, const PolynomialTable& table,
                                            Precision p)
{
    std::vector<BigReal> out;
    out.reserve(static_cast<std::size_t>(std::max(N, 0)));
    const BigReal X = x.at(p), Y = y.at(p);
    BigReal xpow = X;
    for (int n = 1; n <= N; ++n)
    {
        const ExactPoly& P = table.P(n - 1);
        const auto& c = P.scaled_coeffs();
        BigReal acc(p);
        for (auto it = c.rbegin(); it != c.rend(); ++it)
        {
            acc *= Y;
            acc += *it;
        }
        acc /= P.denom();
        out.push_back(acc / xpow);
        xpow *= X;
    }
    return out;
}

/// log10 of the largest absolute rounding scale among the terms, i.e.
/// max_n log10( sum_k |c_k| |y|^k / denom / x^n ). Evaluated in low precision.
inline double expansion_cancellation_scale(double x, double y, int N, const PolynomialTable& table)
{
    const Precision lp = Precision::bits(64);
    const BigReal Y(std::fabs(y), lp);
    double worst = 0;
    for (int n = 1; n <= N; ++n)
    {
        const ExactPoly& P = table.P(n - 1);
        BigReal acc(lp);
        const auto& c = P.scaled_coeffs();
        for (auto it = c.rbegin(); it != c.rend(); ++it)
        {
            acc *= Y;
            acc += BigInt(abs(*it));
        }
        if (acc.is_zero())
            continue;
        acc /= P.denom();
        worst = std::max(worst, acc.log10_abs() - n * std::log10(x));
    }
    return worst;
}

/// 1 + sum_{n=1}^N P_{n-1}(log x)/x^n, accumulated in descending n.
/// Working precision is raised by the cancellation scale of the polynomial
/// evaluations so the result carries `digits` correct digits absolutely.
inline BigReal expansion_bracket(const BigReal& x, int N, int digits, std::vector<BigReal>* terms_out = nullptr)
{
    require_digits(digits);
    if (x <= 0L)
        throw DomainError("expansion: log u must be positive");
    auto table = shared_polynomials(std::max(N, 1));
    double loss = 0;
    if (N > 0)
    {
        const BigReal xd = x.at(Precision::bits(64));
        loss = expansion_cancellation_scale(xd.to_double(), log(xd).to_double(), N, *table);
    }
    const int wd = digits + 10 + static_cast<int>(std::ceil(std::max(loss, 0.0)));
    require_digits(wd);
    const Precision p = Precision::digits(wd);
    const BigReal X = x.at(p);
    std::vector<BigReal> terms = expansion_terms(X, log(X), N, *table, p);
    BigReal sum(p);
    for (int n = N; n >= 1; --n)
        sum += terms[static_cast<std::size_t>(n - 1)];
    sum += 1L;
    if (terms_out)
        *terms_out = std::move(terms);
    return sum;
}

/// f_N(u) = x u (1 + sum_{n=1}^N P_{n-1}(y)/x^n), x = log u, y = log x.
inline BigReal expansion_value(const BigReal& u, int N, int digits, std::vector<BigReal>* terms_out = nullptr)
{
    require_digits(digits);
    const Precision p = Precision::digits(digits + 10);
    const BigReal U = u.at(p);
    if (U <= e_const(p))
        throw DomainError("expansion: u must exceed e");
    const BigReal x = log(U);
    BigReal bracket = expansion_bracket(x, N, digits, terms_out);
    return (x * U * bracket.at(p)).at(Precision::digits(digits));
}

/// Inverse logarithmic integral: the unique x > 1 with li(x) = u.
inline BigReal ali(const BigReal& u, int digits)
{
    require_digits(digits);
    const int wd = digits + 12;
    require_digits(wd);
    const Precision p = Precision::digits(wd);
    const BigReal U = u.at(p);
    const BigReal one(1L, p);
    BigReal tol = abs(U);
    if (tol < 1L)
        tol = one;
    tol /= pow(BigReal(10L, p), static_cast<long>(digits));

    BigReal x(p);
    bool guessed = false;
    if (U > exp(BigReal(1.5, p)))
    {
        int n0 = static_cast<int>(std::min(std::floor(log(U).to_double()), 10.0));
        try
        {
            x = expansion_value(U, n0, wd).at(p);
            guessed = x > 1L && x.is_finite();
        }
        catch (const DomainError&)
        {
            guessed = false;
        }
    }
    if (!guessed)
    {
        if (U > 1L)
            x = 2L * U * log(U + 2L) + 2L;
        else
            x = BigReal(1.5, p);
    }

    BigReal lo = one;     // li -> -inf at 1+
    BigReal hi(p);        // unknown until li(x) > u is seen
    bool have_hi = false;
    const int max_iter = 400;
    for (int it = 0;; ++it)
    {
        if (it == max_iter)
            throw NoConvergence("ali: no convergence after " + std::to_string(max_iter) + " iterations at "
                                + std::to_string(digits) + " digits");
        BigReal r = li(x, wd).at(p) - U;
        if (abs(r) < tol)
            break;
        if (r.sign() > 0)
        {
            hi = x;
            have_hi = true;
        }
        else
        {
            lo = x;
        }
        BigReal next = x - r * log(x);
        bool inside = next > lo && (!have_hi || next < hi);
        if (!inside)
            next = have_hi ? (lo + hi) / 2L : 2L * x;
        x = std::move(next);
    }

    // Certified enclosure: li changes sign across a small window around x.
    BigReal delta = 4L * tol * log(x);
    BigReal left = x - delta;
    if (left <= 1L)
        left = (x + one) / 2L;
    if (!(li(left, wd).at(p) < U && li(x + delta, wd).at(p) > U))
        throw NoConvergence("ali: final enclosure check failed");
    return x.at(Precision::digits(digits));
}

// Fast double-extended paths for large sweeps. Callers escalate to the
// BigReal versions when a comparison margin is tight.

inline long double li_fast(long double x)
{
    if (!(x > 1.0L))
        throw DomainError("li: argument must exceed 1");
    const long double y = std::log(x);
    long double term = 1.0L, sum = 0.0L;
    for (int k = 1; k < 10000; ++k)
    {
        term *= y / k;
        long double c = term / k;
        sum += c;
        if (k > y && c < sum * 1e-21L)
            break;
    }
    return 0.57721566490153286060651209008240243L + std::log(y) + sum;
}

inline long double ali_fast(long double u)
{
    long double x = u > 3.0L ? u * std::log(u) : 2.0L;
    long double lo = 1.0L, hi = INFINITY;
    for (int it = 0; it < 200; ++it)
    {
        long double r = li_fast(x) - u;
        if (r > 0)
            hi = x;
        else
            lo = x;
        long double next = x - r * std::log(x);
        if (!(next > lo && next < hi))
            next = std::isinf(hi) ? 2 * x : (lo + hi) / 2;
        if (std::fabs(next - x) <= x * 4e-19L)
            return next;
        x = next;
    }
    throw NoConvergence("ali_fast: no convergence");
}
} // namespace cipolla

#endif // CIPOLLA_NUMERICS_HPP_INCLUDED
