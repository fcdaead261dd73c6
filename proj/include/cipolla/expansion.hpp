#ifndef CIPOLLA_EXPANSION_HPP_INCLUDED
#define CIPOLLA_EXPANSION_HPP_INCLUDED

#include <cipolla/big_real.hpp>
#include <cipolla/constants.hpp>
#include <cipolla/errors.hpp>
#include <cipolla/numerics.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace cipolla
{
enum class Justification
{
    tmain,
    concrete,
    tdistance,
    schoenfeld,
    none
};

inline const char* to_string(Justification j)
{
    switch (j)
    {
    case Justification::tmain:
        return "TMAIN";
    case Justification::concrete:
        return "CONCRETE";
    case Justification::tdistance:
        return "TDISTANCE";
    case Justification::schoenfeld:
        return "SCHOENFELD";
    case Justification::none:
        break;
    }
    return "NONE";
}

/// A value with an error radius and the result whose hypotheses were
/// checked before the radius was issued. NONE carries an infinite radius.
struct BoundCert
{
    BigReal value{Precision::digits(10)};
    BigReal radius{Precision::digits(10)};
    Justification justification = Justification::none;

    bool is_infinite() const
    {
        return !radius.is_finite();
    }
};

/// Published thresholds (in x = log u) above which the concrete bound holds,
/// index N = 2..11.
inline double concrete_threshold(int N)
{
    static constexpr double z[] = {1.50, 2.34, 3.32, 4.33, 5.36, 6.39, 7.43, 8.46, 9.50, 10.53};
    if (N < 2 || N > 11)
        throw DomainError("concrete_threshold: N must lie in [2, 11]");
    return z[N - 2];
}

struct VReport
{
    int N = 0;
    BigReal u_N{Precision::digits(10)};
    BigReal v_N{Precision::digits(10)};
    BigReal H{Precision::digits(10)};        // li(f_N(u_N)) - u_N
    BigReal majorant{Precision::digits(10)}; // (N+1)! u (loglog u)^N / log^{N+1} u at u_N
    bool equal = false;                      // v_N == u_N
};

inline BigReal tmain_majorant(const BigReal& u, int N)
{
    const BigReal x = log(u);
    return BigReal(factorial(static_cast<unsigned long>(N + 1)), u.precision()) * u
           * pow(log(x), static_cast<long>(N)) / pow(x, static_cast<long>(N + 1));
}

/// v_N := u_N = e^{x_N} when |H_N(u_N)| <= (N+1)! u_N (loglog u_N)^N / log^{N+1} u_N;
/// otherwise u is doubled from u_N until the increasing majorant exceeds |H_N(u_N)|.
inline VReport compute_v(int N, int digits = 30)
{
    if (N < 1)
        throw DomainError("compute_v: N must be >= 1");
    const Precision p = Precision::digits(digits + 10);
    VReport rep;
    rep.N = N;
    ConstantsRow row = x_const(N, digits);
    rep.u_N = exp(row.x.at(p));
    BigReal f = expansion_value(rep.u_N, N, digits + 10).at(p);
    rep.H = li(f, digits + 10).at(p) - rep.u_N;
    rep.majorant = tmain_majorant(rep.u_N, N);
    const BigReal absH = abs(rep.H);
    rep.v_N = rep.u_N;
    rep.equal = absH <= rep.majorant;
    if (!rep.equal)
        while (tmain_majorant(rep.v_N, N) < absH)
            rep.v_N *= 2L;
    return rep;
}

/// In-process memo of v_N.
inline BigReal v_const(int N)
{
    static std::mutex mutex;
    static std::map<int, BigReal> memo;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = memo.find(N);
        if (it != memo.end())
            return it->second;
    }
    BigReal v = compute_v(N).v_N;
    std::lock_guard<std::mutex> lock(mutex);
    return memo.emplace(N, v).first->second;
}

/// Radius of the concrete bound: 20 (N/(e log N))^N (log x)^N / x^{N+1} * x u.
inline BigReal concrete_radius(const BigReal& u, int N)
{
    const Precision p = u.precision();
    const BigReal x = log(u);
    return concrete_coefficient(N, p) * pow(log(x), static_cast<long>(N)) / pow(x, static_cast<long>(N + 1)) * x * u;
}

/// Radius of the general bound: 26 (N+1)! u (loglog u / log u)^N.
inline BigReal tmain_radius(const BigReal& u, int N)
{
    const Precision p = u.precision();
    const BigReal x = log(u);
    return BigReal(BigInt(26L * factorial(static_cast<unsigned long>(N + 1))), p) * u
           * pow(log(x) / x, static_cast<long>(N));
}

/// Error certificate for f_N(u) as an approximation of ali(u). The value
/// field is left to the caller (f_N_eval fills it).
inline BoundCert bound_for(const BigReal& u, int N)
{
    if (N < 1)
        throw DomainError("bound_for: N must be >= 1");
    const Precision p = Precision::digits(std::max(30, u.precision().in_digits()));
    const BigReal U = u.at(p);
    BoundCert cert;
    cert.value = BigReal(p);
    if (U > e_const(p))
    {
        const BigReal x = log(U);
        if (N >= 2 && N <= 11 && x > BigReal(concrete_threshold(N), p))
        {
            cert.radius = concrete_radius(U, N);
            cert.justification = Justification::concrete;
            return cert;
        }
        // u >= v_N >= e^{x_N} >= e^{f_N}; the cheap necessary test avoids
        // computing constants that cannot apply.
        if (x >= f_const(N, p) && U >= v_const(N).at(p))
        {
            cert.radius = tmain_radius(U, N);
            cert.justification = Justification::tmain;
            return cert;
        }
    }
    cert.radius = BigReal(p);
    mpfr_set_inf(cert.radius.get(), 1);
    cert.justification = Justification::none;
    return cert;
}

struct ExpansionResult
{
    BigReal u{Precision::digits(10)};
    int N_used = 0;
    BigReal value{Precision::digits(10)};
    BoundCert bound;
    std::vector<BigReal> terms;                 // P_{n-1}(y)/x^n, n = 1..N_used (signed)
    std::optional<BigReal> heuristic_error;     // auto mode: x u |last term|
};

/// f_N(u) with its certificate.
inline ExpansionResult f_N_eval(const BigReal& u, int N, int digits)
{
    if (N < 0)
        throw DomainError("f_N_eval: N must be >= 0");
    require_digits(digits);
    ExpansionResult r;
    r.u = u;
    r.N_used = N;
    r.value = expansion_value(u, N, digits, &r.terms);
    if (N >= 1)
        r.bound = bound_for(u, N);
    else
    {
        r.bound.radius = BigReal(Precision::digits(30));
        mpfr_set_inf(r.bound.radius.get(), 1);
    }
    r.bound.value = r.value;
    return r;
}

/// Sum the expansion while the terms decrease in magnitude: N_used is the
/// first n with |t_{n+1}| >= |t_n|.
inline ExpansionResult auto_expand(const BigReal& u, int digits)
{
    require_digits(digits);
    const Precision lp = Precision::digits(digits + 10);
    const BigReal U = u.at(lp);
    if (!(log(U) > BigReal(1.5, lp)))
        throw DomainError("auto_expand: requires log u > 1.5");
    const BigReal x = log(U);
    int cap = static_cast<int>(std::ceil(1.2 * x.to_double())) + 10;
    for (;;)
    {
        std::vector<BigReal> terms;
        (void)expansion_bracket(x, cap + 1, digits, &terms);
        int stop = -1;
        for (int n = 1; n <= cap; ++n)
        {
            if (abs(terms[static_cast<std::size_t>(n)]) >= abs(terms[static_cast<std::size_t>(n - 1)]))
            {
                stop = n;
                break;
            }
        }
        if (stop < 0)
        {
            cap *= 2;
            continue;
        }
        ExpansionResult r = f_N_eval(u, stop, digits);
        const BigReal& last = r.terms.back();
        r.heuristic_error = (x * U * abs(last.at(lp))).at(Precision::digits(digits));
        return r;
    }
}
} // namespace cipolla

#endif // CIPOLLA_EXPANSION_HPP_INCLUDED
