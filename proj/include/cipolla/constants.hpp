#ifndef CIPOLLA_CONSTANTS_HPP_INCLUDED
#define CIPOLLA_CONSTANTS_HPP_INCLUDED

#include <cipolla/big_real.hpp>
#include <cipolla/errors.hpp>
#include <cipolla/numerics.hpp>
#include <cipolla/polyengine.hpp>
#include <cipolla/sturm.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cipolla
{
namespace detail
{
inline BigReal ten_pow_neg(int d, Precision p)
{
    return 1L / pow(BigReal(10L, p), static_cast<long>(d));
}

/// Bisection for an increasing predicate: `positive(x)` is false on the left
/// of the root and true on the right. Shrinks [lo, hi] until its width is
/// below 10^-digits * max(1, |hi|). Returns the final bracket.
inline std::pair<BigReal, BigReal> bisect(const std::function<bool(const BigReal&)>& positive, BigReal lo,
                                          BigReal hi, int digits)
{
    const Precision p = min(lo.precision(), hi.precision());
    const BigReal eps = ten_pow_neg(digits, p);
    for (int it = 0; it < 100000; ++it)
    {
        BigReal scale = abs(hi);
        if (scale < 1L)
            scale = BigReal(1L, p);
        if (hi - lo <= eps * scale)
            return {std::move(lo), std::move(hi)};
        BigReal mid = (lo + hi) / 2L;
        if (positive(mid))
            hi = std::move(mid);
        else
            lo = std::move(mid);
    }
    throw NoConvergence("bisection did not reach the requested width");
}

/// sum_{n=1}^N n!/x^n by Horner in 1/x.
inline BigReal factorial_sum(const BigReal& x, int N)
{
    const Precision p = x.precision();
    const BigReal inv = 1L / x;
    BigReal acc(p);
    for (int n = N; n >= 1; --n)
    {
        acc += factorial(static_cast<unsigned long>(n));
        acc *= inv;
    }
    return acc;
}

inline int guarded(int digits)
{
    return digits + 10;
}
} // namespace detail

/// Root x > 1 of x(1 - sum_{n<=N} n!/x^n) = 1.
inline BigReal solve_c(int N, int digits)
{
    if (N < 1)
        throw DomainError("solve_c: N must be >= 1");
    require_digits(digits, 6);
    const int wd = detail::guarded(digits);
    require_digits(wd);
    const Precision p = Precision::digits(wd);
    auto g = [N](const BigReal& x) { return x - x * detail::factorial_sum(x, N) - 1L; };
    BigReal lo = BigReal(1L, p) + pow2(-20, p);
    BigReal hi(2L, p);
    while (g(hi).sign() <= 0)
        hi *= 2L;
    auto [a, b] = detail::bisect([&](const BigReal& x) { return g(x).sign() > 0; }, lo, hi, wd - 2);
    return ((a + b) / 2L).at(Precision::digits(digits));
}

/// sigma_N: the root of sum_{n<=N} n!/x^n = 1, returned as the upper end of
/// a tight bracket so that the sum is strictly below 1 there.
inline BigReal solve_sigma(int N, int digits)
{
    if (N < 1)
        throw DomainError("solve_sigma: N must be >= 1");
    const Precision p = Precision::digits(digits);
    BigReal lo(0.5, p), hi(2L, p);
    while (detail::factorial_sum(hi, N) >= 1L)
        hi *= 2L;
    auto [a, b] = detail::bisect([&](const BigReal& x) { return detail::factorial_sum(x, N) < 1L; }, lo, hi,
                                 digits - 2);
    (void)a;
    return b;
}

/// The normalized tail of -log(1 - sum n!/x^n) beyond order N:
///   G(x) = (-log(1 - S_N(x)) - sum_{n<=N} a_n/(n x^n)) (N+1) x^{N+1} / a_{N+1}.
inline BigReal d_function(const BigReal& x, int N, const std::vector<BigInt>& a)
{
    const Precision p = x.precision();
    BigReal s = detail::factorial_sum(x, N);
    BigReal head = -log(1L - s);
    const BigReal inv = 1L / x;
    BigReal tail(p);
    for (int n = N; n >= 1; --n)
    {
        tail += BigReal(BigRational(a[static_cast<std::size_t>(n - 1)], n), p);
        tail *= inv;
    }
    BigReal g = (head - tail) * static_cast<long>(N + 1) * pow(x, static_cast<long>(N + 1));
    return g / a[static_cast<std::size_t>(N)];
}

/// Least d > sigma_N with G(d) = 1; G decreases from +inf to a limit below 1.
inline BigReal solve_d(int N, int digits)
{
    if (N < 1)
        throw DomainError("solve_d: N must be >= 1");
    require_digits(digits, 6);
    const int cancel = static_cast<int>(std::ceil((N + 1) * std::log10(2.0 * N + 4.0)));
    const int wd = detail::guarded(digits) + 10 + cancel;
    require_digits(wd);
    const Precision p = Precision::digits(wd);
    const std::vector<BigInt> a = a_sequence(N + 1);
    const BigReal sigma = solve_sigma(N, wd).at(p);
    BigReal offset(1L, p);
    while (d_function(sigma + offset, N, a) > 1L)
        offset *= 2L;
    auto [lo, hi] = detail::bisect([&](const BigReal& x) { return d_function(x, N, a) < 1L; }, sigma,
                                   sigma + offset, detail::guarded(digits));
    return ((lo + hi) / 2L).at(Precision::digits(digits));
}

struct ConstantsRow
{
    int N = 0;
    int digits = 0;
    BigReal c{Precision::digits(10)};
    BigReal d{Precision::digits(10)};
    BigReal alpha{Precision::digits(10)};
    BigReal beta{Precision::digits(10)};
    BigReal f{Precision::digits(10)};
    BigReal x{Precision::digits(10)};
};

/// f_N = 4(N+1)/3.
inline BigReal f_const(int N, Precision p)
{
    return BigReal(BigRational(4 * (N + 1), 3), p);
}

/// beta >= e with beta / log beta = alpha (alpha >= e).
inline BigReal solve_beta(const BigReal& alpha, int digits)
{
    const int wd = detail::guarded(digits);
    const Precision p = Precision::digits(wd);
    const BigReal e = e_const(p);
    const BigReal A = alpha.at(p);
    if (A <= e)
        return e.at(Precision::digits(digits));
    auto h = [&](const BigReal& x) { return x / log(x) - A; };
    BigReal hi = 2L * e;
    while (h(hi).sign() <= 0)
        hi *= 2L;
    auto [lo, up] = detail::bisect([&](const BigReal& x) { return h(x).sign() > 0; }, e, hi, wd - 2);
    return ((lo + up) / 2L).at(Precision::digits(digits));
}

inline ConstantsRow x_const(int N, int digits)
{
    if (N < 1)
        throw DomainError("x_const: N must be >= 1");
    require_digits(digits, 6);
    const Precision p = Precision::digits(digits);
    const Precision wp = Precision::digits(detail::guarded(digits));
    ConstantsRow row;
    row.N = N;
    row.digits = digits;
    row.c = solve_c(N, detail::guarded(digits));
    row.d = solve_d(N, detail::guarded(digits));
    const BigReal e = e_const(wp);
    row.alpha = max(e, max(row.c, row.d)).at(wp);
    row.beta = solve_beta(row.alpha, detail::guarded(digits));
    row.f = f_const(N, wp);
    const BigReal e2 = exp(BigReal(2L, wp));
    row.x = max(row.beta, max(row.f, e2)).at(p);
    row.c = row.c.at(p);
    row.d = row.d.at(p);
    row.alpha = row.alpha.at(p);
    row.beta = row.beta.at(p);
    row.f = row.f.at(p);
    return row;
}

enum class MaxLocation
{
    boundary,
    interior,
    limit
};

struct MaxReport
{
    int n = 0;
    BigReal value{Precision::digits(10)};
    MaxLocation where = MaxLocation::limit;
    BigReal t{Precision::digits(10)}; // log x at the maximizer (boundary/interior)
};

/// sup over t > t_low of |P_{n-1}(t)| / t^{n-1}. Critical points are the
/// real roots of t P'(t) - (n-1) P(t); the boundary value and the limit at
/// infinity (|leading coefficient|) complete the candidate set.
inline MaxReport m_max_over(int n, const BigReal& t_low, int digits)
{
    if (n < 2)
        throw DomainError("m_max_over: n must be >= 2");
    require_digits(digits, 6);
    const int m = n - 1;
    const Precision p = Precision::digits(digits + 10);
    const ExactPoly P = poly_P(m);
    auto g = [&](const BigReal& t) {
        const auto& c = P.scaled_coeffs();
        BigReal acc(p);
        for (auto it = c.rbegin(); it != c.rend(); ++it)
        {
            acc *= t;
            acc += *it;
        }
        acc /= P.denom();
        return abs(acc / pow(t, static_cast<long>(m)));
    };
    MaxReport best;
    best.n = n;
    best.value = BigReal(BigRational(abs(P.leading_coeff())), p);
    best.where = MaxLocation::limit;
    const BigReal T = t_low.at(p);
    BigReal at_boundary = g(T);
    if (at_boundary > best.value)
    {
        best.value = at_boundary;
        best.where = MaxLocation::boundary;
        best.t = T;
    }
    const ExactPoly h = ExactPoly::monomial(1, 1) * P.derivative() - P * BigRational(m);
    if (!h.is_zero() && h.degree() >= 1)
    {
        for (const auto& r : isolate_real_roots(h, digits + 8))
        {
            BigReal t = r.value.at(p);
            if (t <= T)
                continue;
            BigReal v = g(t);
            if (v > best.value)
            {
                best.value = v;
                best.where = MaxLocation::interior;
                best.t = t;
            }
        }
    }
    best.value = best.value.at(Precision::digits(digits));
    return best;
}

/// M_n over x > x_10, 2 <= n <= 10.
inline MaxReport m_max(int n, int digits)
{
    if (n < 2 || n > 10)
        throw DomainError("m_max: n must lie in [2, 10]");
    ConstantsRow row = x_const(10, digits);
    return m_max_over(n, log(row.x.at(Precision::digits(digits + 10))), digits);
}

/// 20 (N/(e log N))^N, the constant of the concrete truncation bound.
inline BigReal concrete_coefficient(int N, Precision p)
{
    if (N < 2)
        throw DomainError("concrete_coefficient: N must be >= 2");
    BigReal n(static_cast<long>(N), p);
    return 20L * pow(n / (e_const(p) * log(n)), static_cast<long>(N));
}

struct ZReport
{
    int N = 0;
    int K = 0;
    BigInt R;
    BigReal x_K{Precision::digits(10)};
    BigReal z_prime{Precision::digits(10)};
    BigReal z{Precision::digits(10)};
    std::size_t grid_points = 0;
    bool violation_found = false;
};

/// Majorant of the remainder bracket used in the first stage:
///   sum_{n=N+1}^K M_n r^{n-N-1} + R r^{K-N},  r = log x / x.
inline BigReal z_majorant(const BigReal& x, int N, int K, const std::vector<BigReal>& M, const BigInt& R)
{
    const Precision p = x.precision();
    const BigReal r = log(x) / x;
    BigReal acc(p);
    BigReal rp(1L, p);
    for (int n = N + 1; n <= K; ++n)
    {
        acc += M[static_cast<std::size_t>(n)].at(p) * rp;
        rp *= r;
    }
    return acc + rp * R;
}

/// Normalized truncation error at x = log u:
///   (ali(e^x)/(x e^x) - 1 - sum_{n<=N} P_{n-1}(log x)/x^n) x^{N+1} / log^N x
inline BigReal normalized_error(const BigReal& x, int N, int digits)
{
    const double xd = x.to_double();
    const int wd = digits + 10 + static_cast<int>(std::ceil((N + 1) * std::log10(std::max(xd, 2.0))));
    const Precision p = Precision::digits(wd);
    const BigReal X = x.at(p);
    const BigReal u = exp(X);
    BigReal a = ali(u, wd).at(p);
    BigReal lhs = a / (X * u);
    BigReal br = expansion_bracket(X, N, wd).at(p);
    BigReal L = log(X);
    return ((lhs - br) * pow(X, static_cast<long>(N + 1)) / pow(L, static_cast<long>(N))).at(
        Precision::digits(digits));
}

/// Two-stage search for the concrete-bound thresholds:
///  (i)  least z' >= x_K where the remainder majorant drops below the
///       target coefficient (the majorant decreases for x > e);
///  (ii) the least z such that |normalized_error| <= coefficient on (z, z'],
///       from a dense grid over (1.3, z') refined by bisection.
inline ZReport z_const(int N, int digits)
{
    if (N < 2 || N > 11)
        throw DomainError("z_const: N must lie in [2, 11]");
    require_digits(digits, 6);
    const Precision p = Precision::digits(digits + 10);
    ZReport rep;
    rep.N = N;
    rep.K = N <= 5 ? 10 : 20;
    rep.R = 26 * factorial(static_cast<unsigned long>(rep.K + 1));
    ConstantsRow row = x_const(rep.K, digits);
    rep.x_K = row.x;
    const BigReal xK = row.x.at(p);
    std::vector<BigReal> M(static_cast<std::size_t>(rep.K + 1), BigReal(p));
    for (int n = N + 1; n <= rep.K; ++n)
        M[static_cast<std::size_t>(n)] = m_max_over(n, log(xK), digits).value.at(p);
    const BigReal target = concrete_coefficient(N, p);

    if (z_majorant(xK, N, rep.K, M, rep.R) < target)
    {
        rep.z_prime = xK;
    }
    else
    {
        BigReal hi = 2L * xK;
        while (!(z_majorant(hi, N, rep.K, M, rep.R) < target))
            hi *= 2L;
        auto [lo, up] = detail::bisect(
            [&](const BigReal& x) { return z_majorant(x, N, rep.K, M, rep.R) < target; }, xK, hi, digits);
        (void)lo;
        rep.z_prime = up;
    }

    const double zp = rep.z_prime.to_double();
    const double target_d = target.to_double();
    auto violates = [&](const BigReal& x) { return abs(normalized_error(x, N, 12)).to_double() > target_d; };

    std::vector<double> grid;
    const double dense_end = std::min(3.0 * N + 10.0, zp);
    for (int i = 0;; ++i)
    {
        double x = 1.3 + 0.01 * (i + 1);
        if (x >= dense_end)
            break;
        grid.push_back(x);
    }
    for (double x = dense_end; x < zp; x *= 1.005)
        grid.push_back(x);
    grid.push_back(zp);
    rep.grid_points = grid.size();

    std::optional<std::size_t> last_bad;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (violates(BigReal(grid[i], p)))
            last_bad = i;

    if (!last_bad)
    {
        rep.z = BigReal(1.3, p).at(Precision::digits(digits));
        return rep;
    }
    rep.violation_found = true;
    if (*last_bad + 1 >= grid.size())
        throw InternalInconsistency("z_const: bound violated at z'");
    BigReal lo(grid[*last_bad], p), hi(grid[*last_bad + 1], p);
    auto [a, b] = detail::bisect([&](const BigReal& x) { return !violates(x); }, lo, hi, 8);
    (void)a;
    rep.z = b.at(Precision::digits(digits));
    return rep;
}

// ---- lemma checks ----------------------------------------------------------

struct PBoundReport
{
    int n_max = 0;
    std::size_t checked = 0;
    std::vector<std::pair<int, std::string>> failures;            // (n, y)
    std::size_t conjecture_checked = 0;
    std::vector<std::pair<int, std::string>> conjecture_failures; // never a hard failure
    bool ok() const
    {
        return failures.empty();
    }
};

/// |P_n(y)| <= 3 n! y^n for 1 <= n <= n_max and |P_0(y)| <= y, exactly on a
/// rational grid with y >= 2. The sharper conjectural bound
/// |P_n(y)| <= (n/(e log n))^n y^n, n >= 3, y > 2 log n is reported apart.
inline PBoundReport check_p_bound(int n_max, const std::vector<BigRational>& y_grid)
{
    if (n_max < 0)
        throw DomainError("check_p_bound: n_max must be >= 0");
    for (const auto& y : y_grid)
        if (y < 2)
            throw DomainError("check_p_bound: grid values must be >= 2");
    PBoundReport rep;
    rep.n_max = n_max;
    auto table = shared_polynomials(std::max(n_max, 1));
    const Precision p = Precision::digits(40);
    for (const auto& y : y_grid)
    {
        BigRational y_pow = y;
        for (int n = 0; n <= n_max; ++n)
        {
            const BigRational v = abs(table->P(n).eval(y));
            BigRational bound = n == 0 ? y : BigRational(3 * factorial(static_cast<unsigned long>(n))) * y_pow;
            ++rep.checked;
            if (v > bound)
                rep.failures.emplace_back(n, y.get_str());
            if (n >= 3)
            {
                const BigReal nn(static_cast<long>(n), p);
                const BigReal Y(y, p);
                if (Y > 2L * log(nn))
                {
                    ++rep.conjecture_checked;
                    BigReal rhs = pow(nn / (e_const(p) * log(nn)) * Y, static_cast<long>(n));
                    if (BigReal(v, p) > rhs)
                        rep.conjecture_failures.emplace_back(n, y.get_str());
                }
            }
            if (n >= 1)
                y_pow *= y;
        }
    }
    return rep;
}

struct Lemma54Report
{
    int n = 0;
    struct Point
    {
        double log_u;
        double integral;
        double error_estimate;
        double rhs;
        bool holds;
    };
    std::vector<Point> points;
    bool ok() const
    {
        return std::all_of(points.begin(), points.end(), [](const Point& q) { return q.holds; });
    }
};

/// Integral of (loglog t)^n / log^{n+1} t over [e^{f_n}, u] against
/// 4u (loglog u)^n / log^{n+1} u. With t = e^s the integrand is
/// e^s (log s)^n / s^{n+1} on [f_n, log u].
inline Lemma54Report check_lemma_54(int n, const std::vector<BigReal>& u_grid, double rel_tol = 1e-10)
{
    if (n < 1)
        throw DomainError("check_lemma_54: n must be >= 1");
    Lemma54Report rep;
    rep.n = n;
    const double f = 4.0 * (n + 1) / 3.0;
    for (const auto& u : u_grid)
    {
        if (u.sign() <= 0)
            throw DomainError("check_lemma_54: u must be positive");
        const double x = log(u).to_double();
        if (x < f - 1e-12)
            throw DomainError("check_lemma_54: u must be >= e^{f_n}");
        auto integrand = [n](double s) { return std::exp(s) * std::pow(std::log(s), n) / std::pow(s, n + 1); };
        double integral = 0, err = 0;
        if (x > f)
        {
            integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, f, x, 20, rel_tol,
                                                                                      &err);
            if (!(err <= rel_tol * std::fabs(integral)) && integral != 0)
                throw QuadratureFailure("check_lemma_54: tolerance not met at log u = " + std::to_string(x));
        }
        const double rhs = 4.0 * std::exp(x) * std::pow(std::log(x), n) / std::pow(x, n + 1);
        rep.points.push_back({x, integral, err, rhs, integral <= rhs});
    }
    return rep;
}

struct ComparationReport
{
    struct Point
    {
        std::string u;
        bool log_bound_checked;
        bool log_bound_holds;
        bool linear_bound_checked;
        bool linear_bound_holds;
    };
    std::vector<Point> points;
    bool ok() const
    {
        return std::all_of(points.begin(), points.end(), [](const Point& q) {
            return (!q.log_bound_checked || q.log_bound_holds) && (!q.linear_bound_checked || q.linear_bound_holds);
        });
    }
};

/// log ali(u) <= 2 log u (u >= 2) and ali(u) <= 2u log u (u >= e^2).
inline ComparationReport check_comparation(const std::vector<BigReal>& u_grid, int digits = 30)
{
    ComparationReport rep;
    const Precision p = Precision::digits(digits);
    const BigReal e2 = exp(BigReal(2L, p));
    for (const auto& u0 : u_grid)
    {
        const BigReal u = u0.at(p);
        ComparationReport::Point pt{u.to_sci(12), false, false, false, false};
        if (u >= 2L)
        {
            BigReal a = ali(u, digits).at(p);
            pt.log_bound_checked = true;
            pt.log_bound_holds = log(a) <= 2L * log(u);
            if (u >= e2)
            {
                pt.linear_bound_checked = true;
                pt.linear_bound_holds = a <= 2L * u * log(u);
            }
        }
        rep.points.push_back(std::move(pt));
    }
    return rep;
}
} // namespace cipolla

#endif // CIPOLLA_CONSTANTS_HPP_INCLUDED
