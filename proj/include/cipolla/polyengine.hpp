#ifndef CIPOLLA_POLYENGINE_HPP_INCLUDED
#define CIPOLLA_POLYENGINE_HPP_INCLUDED

#include <cipolla/bigint.hpp>
#include <cipolla/errors.hpp>
#include <cipolla/exact_poly.hpp>
#include <cipolla/formal_series.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cipolla
{
/// Counter for coefficient operations, charged with the unit-cost convention
/// of the O(N^2) analysis: Pascal additions, 4 per B_n, 8n-1 per A_n and
/// 6 per off-diagonal a(n,k) with 1 <= k < n.
struct OpCounter
{
    std::uint64_t ops = 0;

    void charge(std::uint64_t n) noexcept
    {
        ops += n;
    }
};

/// Closed form of the operation count, (15N^2 + 3N - 16)/2.
constexpr std::uint64_t op_count_formula(std::uint64_t N) noexcept
{
    return (15 * N * N + 3 * N - 16) / 2;
}

/// A_n = a(n,n) and B_n = a(n,n-1), n = 0..N.
struct DiagonalSequences
{
    std::vector<BigInt> A;
    std::vector<BigInt> B;
};

namespace detail
{
inline void require_order(int N, int min, const char* what)
{
    if (N < min)
        throw DomainError(std::string(what) + ": order " + std::to_string(N) + " below "
                          + std::to_string(min));
}

/// Pascal triangle C(m, j) for 0 <= m <= max_m; one charged addition per interior entry.
inline std::vector<std::vector<BigInt>> pascal_rows(int max_m, OpCounter* counter)
{
    std::vector<std::vector<BigInt>> rows;
    for (int m = 0; m <= max_m; ++m)
    {
        std::vector<BigInt> row(static_cast<std::size_t>(m) + 1);
        row.front() = 1;
        row.back() = 1;
        for (int j = 1; j < m; ++j)
            row[j] = rows[m - 1][j - 1] + rows[m - 1][j];
        if (counter && m >= 2)
            counter->charge(static_cast<std::uint64_t>(m - 1));
        rows.push_back(std::move(row));
    }
    return rows;
}
} // namespace detail

inline DiagonalSequences gen_sequences(int N, OpCounter* counter = nullptr)
{
    detail::require_order(N, 1, "gen_sequences");
    DiagonalSequences s;
    s.A.resize(static_cast<std::size_t>(N) + 1);
    s.B.resize(static_cast<std::size_t>(N) + 1);
    s.A[0] = 1;
    s.A[1] = 2;
    s.B[0] = 1;
    s.B[1] = 1;
    const auto binom = detail::pascal_rows(N - 2, counter);

    for (int n = 2; n <= N; ++n)
    {
        s.B[n] = n * (s.B[n - 1] + (n - 1) * s.A[n - 1]);
        if (counter)
            counter->charge(4);

        BigInt sum = 0;
        for (int k = 1; k <= n - 1; ++k)
        {
            BigInt bracket = k * (k - 1) * s.A[k - 1] - s.A[k] + k * s.B[k - 1];
            sum += binom[n - 2][k - 1] * bracket * s.A[n - k - 1];
        }
        s.A[n] = n * n * s.A[n - 1] + n * s.B[n - 1] - (n - 1) * sum;
        if (counter)
            counter->charge(static_cast<std::uint64_t>(8 * n - 1));
    }
    return s;
}

enum class TriangleKind
{
    a,
    b
};

/// Exact nonnegative triangle a(n,k) or b(n,k), jagged rows k = 0..n.
/// a-triangles start at row 0, b-triangles at row 1 (Q_0 is not defined).
class CoeffTriangle
{
public:
    CoeffTriangle(TriangleKind kind, int first_row, std::vector<std::vector<BigInt>> rows)
    : kind_(kind), first_row_(first_row), rows_(std::move(rows))
    {
    }

    TriangleKind kind() const noexcept
    {
        return kind_;
    }

    int first_row() const noexcept
    {
        return first_row_;
    }

    int last_row() const noexcept
    {
        return first_row_ + static_cast<int>(rows_.size()) - 1;
    }

    /// Entry (n, k); zero outside 0 <= k <= n.
    BigInt at(int n, int k) const
    {
        if (k < 0 || k > n)
            return 0;
        return row(n).at(static_cast<std::size_t>(k));
    }

    const std::vector<BigInt>& row(int n) const
    {
        return rows_.at(static_cast<std::size_t>(n - first_row_));
    }

    /// A_n = a(n,n).
    std::vector<BigInt> diag() const
    {
        std::vector<BigInt> d;
        for (const auto& r : rows_)
            d.push_back(r.back());
        return d;
    }

    /// B_n = a(n,n-1), n >= 1.
    std::vector<BigInt> subdiag() const
    {
        std::vector<BigInt> d;
        for (const auto& r : rows_)
            if (r.size() >= 2)
                d.push_back(r[r.size() - 2]);
        return d;
    }

private:
    TriangleKind kind_;
    int first_row_;
    std::vector<std::vector<BigInt>> rows_;
};

inline CoeffTriangle coeff_triangle_a(int N, OpCounter* counter = nullptr)
{
    detail::require_order(N, 1, "coeff_triangle_a");
    const DiagonalSequences seq = gen_sequences(N, counter);

    std::vector<std::vector<BigInt>> rows;
    rows.push_back({BigInt(1)});
    rows.push_back({BigInt(1), BigInt(2)});
    for (int n = 2; n <= N; ++n)
    {
        const auto& prev = rows.back();
        std::vector<BigInt> row(static_cast<std::size_t>(n) + 1);
        for (int k = 0; k < n; ++k)
        {
            BigInt t = BigInt(n) * (n - 1) * prev[k];
            const unsigned long d = static_cast<unsigned long>(n - k);
            if (!mpz_divisible_ui_p(t.get_mpz_t(), d))
                throw InternalInconsistency("coeff_triangle_a: inexact division at (" + std::to_string(n) + ","
                                            + std::to_string(k) + ")");
            mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), d);
            if (k >= 1)
                t += n * prev[k - 1];
            row[k] = std::move(t);
            if (counter && k >= 1)
                counter->charge(6);
        }
        row[n] = seq.A[n];
        rows.push_back(std::move(row));
    }
    return CoeffTriangle(TriangleKind::a, 0, std::move(rows));
}

inline CoeffTriangle coeff_triangle_b(const CoeffTriangle& a)
{
    if (a.kind() != TriangleKind::a)
        throw DomainError("coeff_triangle_b: needs an a-triangle");
    std::vector<std::vector<BigInt>> rows;
    for (int n = 1; n <= a.last_row(); ++n)
    {
        std::vector<BigInt> row(static_cast<std::size_t>(n) + 1);
        for (int k = 0; k <= n; ++k)
            row[k] = a.at(n, k) - (n - k + 1) * a.at(n, k - 1);
        rows.push_back(std::move(row));
    }
    return CoeffTriangle(TriangleKind::b, 1, std::move(rows));
}

inline CoeffTriangle coeff_triangle_b(int N)
{
    detail::require_order(N, 1, "coeff_triangle_b");
    return coeff_triangle_b(coeff_triangle_a(N));
}

/// Signed-magnitude triangle row -> polynomial over n!:
/// scaled coefficient of y^{n-k} is (-1)^{n+1} (-1)^k t(n,k).
inline ExactPoly poly_from_triangle_row(const CoeffTriangle& t, int n)
{
    std::vector<BigInt> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
    {
        const bool negative = ((n + 1 + k) % 2) != 0;
        BigInt v = t.at(n, k);
        c[static_cast<std::size_t>(n - k)] = negative ? BigInt(-v) : v;
    }
    return ExactPoly(std::move(c), factorial(static_cast<unsigned long>(n)));
}

/// P_n from the a-triangle; P_0 = y - 1 bypasses the sign convention.
inline ExactPoly poly_P(const CoeffTriangle& a, int n)
{
    if (n < 0)
        throw DomainError("poly_P: negative index");
    if (n == 0)
        return ExactPoly({BigInt(-1), BigInt(1)});
    return poly_from_triangle_row(a, n);
}

inline ExactPoly poly_P(int n)
{
    if (n < 0)
        throw DomainError("poly_P: negative index");
    return poly_P(coeff_triangle_a(std::max(n, 1)), n);
}

/// Q_n = P_n + P_n', kept over n!.
inline ExactPoly poly_Q(int n)
{
    if (n < 1)
        throw DomainError("poly_Q: Q_n is defined for n >= 1");
    const ExactPoly p = poly_P(n);
    return (p + p.derivative()).rescaled(factorial(static_cast<unsigned long>(n)));
}

/// Q_n from P_n - (n-1) P_{n-1} + P'_{n-1}; must agree with poly_Q.
inline ExactPoly poly_Q_from_eqQ(const ExactPoly& p_n, const ExactPoly& p_prev, int n)
{
    return p_n - p_prev * BigRational(n - 1) + p_prev.derivative();
}

/// All P_0..P_N from the a-triangle, each over n!.
inline std::vector<ExactPoly> gen_P_triangle(int N)
{
    detail::require_order(N, 1, "gen_P_triangle");
    const CoeffTriangle a = coeff_triangle_a(N);
    std::vector<ExactPoly> out;
    out.reserve(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n)
        out.push_back(poly_P(a, n));
    return out;
}

/// P_0..P_N from the quadratic recurrence, carried out on p_n = n! P_n so
/// every intermediate is an integer polynomial:
///   p_n = n^2 p_{n-1} - n p'_{n-1}
///       + (n-1) sum_{k=1}^{n-1} C(n-2,k-1) {k(k-1) p_{k-1} - p_k - k p'_{k-1}} p_{n-k-1}
inline std::vector<ExactPoly> gen_P_recurrence(int N)
{
    detail::require_order(N, 1, "gen_P_recurrence");
    std::vector<ExactPoly> p; // integer polynomials, denom 1
    std::vector<ExactPoly> dp;
    p.push_back(ExactPoly({BigInt(-1), BigInt(1)}));
    dp.push_back(p[0].derivative());
    for (int n = 1; n <= N; ++n)
    {
        ExactPoly next = p[n - 1] * BigRational(n * n) - dp[n - 1] * BigRational(n);
        ExactPoly sum;
        for (int k = 1; k <= n - 1; ++k)
        {
            ExactPoly bracket = p[k - 1] * BigRational(k * (k - 1)) - p[k] - dp[k - 1] * BigRational(k);
            sum += (bracket * p[n - k - 1]) * BigRational(binomial(n - 2, k - 1));
        }
        next += sum * BigRational(n - 1);
        dp.push_back(next.derivative());
        p.push_back(std::move(next));
    }
    std::vector<ExactPoly> out;
    out.reserve(p.size());
    for (int n = 0; n <= N; ++n)
        out.push_back(p[n] * BigRational(BigInt(1), factorial(static_cast<unsigned long>(n))));
    for (int n = 0; n <= N; ++n)
        out[n] = out[n].rescaled(factorial(static_cast<unsigned long>(n)));
    return out;
}

/// One application of  T(V) = 1 + y/x - V/x - V_x - V_y/x + (log V)/x.
inline FormalSeries fixed_point_map(const FormalSeries& V)
{
    const int order = V.order();
    FormalSeries t = FormalSeries::one(order);
    if (order >= 1)
        t.set(1, ExactPoly({BigInt(0), BigInt(1)}));
    FormalSeries inner = V.log() - V - V.derivative_y();
    t += inner.shifted();
    t -= V.derivative_x();
    return t;
}

enum class FixedPointSchedule
{
    /// Every iteration carries the full truncation order N+1.
    full,
    /// Iteration m works at order min(m, N+1). Term n of T(V) only depends
    /// on terms < n of V, so the converged prefix is identical to `full`.
    growing
};

/// P_0..P_N read off the fixed point of T, reached from V = 1 after N+2
/// iterations (each iteration fixes one further term).
inline std::vector<ExactPoly> gen_P_fixed_point(int N, FixedPointSchedule schedule = FixedPointSchedule::growing)
{
    detail::require_order(N, 1, "gen_P_fixed_point");
    const int order = N + 1;
    FormalSeries V = FormalSeries::one(schedule == FixedPointSchedule::full ? order : 0);
    for (int m = 1; m <= N + 2; ++m)
    {
        if (schedule == FixedPointSchedule::growing)
            V = V.with_order(std::min(m, order));
        V = fixed_point_map(V);
    }
    std::vector<ExactPoly> out;
    for (int n = 1; n <= order; ++n)
        out.push_back(V[n].rescaled(factorial(static_cast<unsigned long>(n - 1))));
    return out;
}

/// a_1..a_N with a_1 = 1, a_n = n! n + sum_{k=1}^{n-1} k! a_{n-k}.
/// Index 0 of the result holds a_1.
inline std::vector<BigInt> a_sequence(int N)
{
    detail::require_order(N, 1, "a_sequence");
    const auto fact = factorials_upto(static_cast<unsigned long>(N));
    std::vector<BigInt> a(static_cast<std::size_t>(N) + 1);
    a[1] = 1;
    for (int n = 2; n <= N; ++n)
    {
        BigInt v = fact[n] * n;
        for (int k = 1; k <= n - 1; ++k)
            v += fact[k] * a[n - k];
        a[n] = std::move(v);
    }
    a.erase(a.begin());
    return a;
}

struct PdeReport
{
    bool ok = true;
    /// First n at which an identity fails, 0 when none.
    int first_failure = 0;
    /// "P" or "Q".
    std::string which;
};

/// Checks (n-1) P_{n-1} = P'_{n-1} - P'_n for 1 <= n <= N and the same for
/// Q with n >= 2, on polynomials produced by the recurrence route.
inline PdeReport check_pde(int N)
{
    detail::require_order(N, 1, "check_pde");
    const auto P = gen_P_recurrence(N);
    std::vector<ExactPoly> Q(P.size());
    for (int n = 1; n <= N; ++n)
        Q[n] = P[n] + P[n].derivative();

    PdeReport rep;
    for (int n = 1; n <= N; ++n)
    {
        if (!(P[n - 1] * BigRational(n - 1) == P[n - 1].derivative() - P[n].derivative()))
            return {false, n, "P"};
        if (n >= 2 && !(Q[n - 1] * BigRational(n - 1) == Q[n - 1].derivative() - Q[n].derivative()))
            return {false, n, "Q"};
    }
    return rep;
}

/// Runs the triangle algorithm for N under the counter and returns the count.
inline std::uint64_t op_count_model(int N)
{
    detail::require_order(N, 2, "op_count_model");
    OpCounter counter;
    (void)coeff_triangle_a(N, &counter);
    return counter.ops;
}

/// P_0..P_N from the triangle path, built once and shared read-only.
class PolynomialTable
{
public:
    explicit PolynomialTable(int N) : polys_(gen_P_triangle(std::max(N, 1))) {}

    int max_index() const noexcept
    {
        return static_cast<int>(polys_.size()) - 1;
    }

    const ExactPoly& P(int n) const
    {
        if (n < 0 || n > max_index())
            throw DomainError("PolynomialTable: P_" + std::to_string(n) + " not tabulated");
        return polys_[static_cast<std::size_t>(n)];
    }

private:
    std::vector<ExactPoly> polys_;
};
} // namespace cipolla

#endif // CIPOLLA_POLYENGINE_HPP_INCLUDED
