#include <cipolla/constants.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

using namespace cipolla;

namespace
{
struct Printed
{
    int N;
    double c, d, x;
};

// Published tables, five decimals.
const std::vector<Printed> kTable = {
    {1, 2, 1.03922, 7.38906},          {2, 2.73205, 2.38568, 7.38906},    {3, 3.20701, 3.33232, 7.38906},
    {4, 3.56383, 3.92171, 8.29874},    {5, 3.86841, 4.28707, 9.77283},    {6, 4.15213, 4.54145, 10.81135},
    {7, 4.43119, 4.75734, 11.70187},   {8, 4.71412, 4.97336, 12.60164},   {9, 5.00517, 5.20626, 13.58167},
    {10, 5.30597, 5.46090, 14.66667},  {11, 5.61664, 5.73661, 16.00000},  {12, 5.93649, 6.03061, 17.33333},
    {13, 6.26449, 6.33969, 18.66667},  {14, 6.59947, 6.66091, 20.00000},  {15, 6.94035, 6.99175, 21.42740},
    {20, 8.70335, 8.73298, 29.57923},  {30, 12.34925, 12.37349, 47.86556}, {40, 16.03475, 16.05983, 67.69154},
    {50, 19.72833, 19.75448, 88.57644}, {60, 23.42351, 23.45053, 110.29065},
};

// Rounded to the printed number of decimals.
bool matches_decimals(const BigReal& v, double printed, int decimals)
{
    const double scale = std::pow(10.0, decimals);
    return std::llround(v.to_double() * scale) == std::llround(printed * scale);
}

BigReal ten_pow(int e, Precision p)
{
    return pow(BigReal(10L, p), static_cast<long>(e));
}
} // namespace

TEST(Constants, PublishedTablesFiveDecimals)
{
    for (const auto& row : kTable)
    {
        ConstantsRow r = x_const(row.N, 30);
        EXPECT_TRUE(matches_decimals(r.c, row.c, 5)) << "c_" << row.N << " = " << r.c.to_fixed(8);
        EXPECT_TRUE(matches_decimals(r.d, row.d, 5)) << "d_" << row.N << " = " << r.d.to_fixed(8);
        EXPECT_TRUE(matches_decimals(r.x, row.x, 5)) << "x_" << row.N << " = " << r.x.to_fixed(8);
    }
}

TEST(Constants, ClosedForms)
{
    const Precision p = Precision::digits(40);
    EXPECT_LT(abs(solve_c(1, 30) - 2L).to_double(), 1e-29);
    // c_2 solves x^2 - 2x - 2 = 0.
    EXPECT_LT(abs(solve_c(2, 30) - (1L + sqrt(BigReal(3L, p)))).to_double(), 1e-29);
    EXPECT_LT(abs(x_const(11, 30).x - BigReal(16L, p)).to_double(), 1e-29);
    EXPECT_LT(abs(x_const(1, 30).x - exp(BigReal(2L, p))).to_double(), 1e-28);
}

TEST(Constants, MonotoneInN)
{
    BigReal pc = solve_c(1, 20), pd = solve_d(1, 20);
    for (int N = 2; N <= 60; ++N)
    {
        BigReal c = solve_c(N, 20), d = solve_d(N, 20);
        EXPECT_GT(c, pc) << N;
        EXPECT_GT(d, pd) << N;
        EXPECT_LT(abs(d - c).to_double(), 1.0) << N;
        pc = c;
        pd = d;
    }
}

TEST(Constants, Residuals)
{
    const int digits = 30;
    for (int N : {1, 2, 7, 20, 45, 60})
    {
        const Precision p = Precision::digits(digits + 20);
        BigReal c = solve_c(N, digits).at(p);
        BigReal s(p);
        BigReal xp = c;
        for (int n = 1; n <= N; ++n)
        {
            s += BigReal(factorial(static_cast<unsigned long>(n)), p) / xp;
            xp *= c;
        }
        BigReal res = abs(c * (1L - s) - 1L);
        EXPECT_LT(res, ten_pow(-digits + 2, p)) << "c_" << N;

        const int wd = digits + 20 + static_cast<int>(std::ceil((N + 1) * std::log10(2.0 * N + 4)));
        const Precision pd = Precision::digits(wd);
        BigReal d = solve_d(N, digits).at(pd);
        BigReal g = d_function(d, N, a_sequence(N + 1));
        EXPECT_LT(abs(g - 1L), ten_pow(-digits + 2, pd) * static_cast<long>(N + 1) * 10L) << "d_" << N;
    }
}

TEST(Constants, Domain)
{
    EXPECT_THROW(solve_c(0, 30), DomainError);
    EXPECT_THROW(solve_d(0, 30), DomainError);
    EXPECT_THROW(solve_c(3, 5), DomainError);
    EXPECT_THROW(solve_c(3, kMaxDigits + 1), PrecisionExhausted);
}

TEST(Maxima, FootnoteValues)
{
    const std::map<int, double> printed = {{5, 0.250636}, {6, 0.526887}, {7, 1.300565},
                                           {8, 3.719653}, {9, 12.070813}, {10, 43.788782}};
    const Precision p = Precision::digits(30);
    EXPECT_LT(abs(m_max(2, 30).value - 1L).to_double(), 1e-25);
    EXPECT_LT(abs(m_max(3, 30).value - BigReal(BigRational(1, 2), p)).to_double(), 1e-25);
    EXPECT_LT(abs(m_max(4, 30).value - BigReal(BigRational(1, 3), p)).to_double(), 1e-25);
    EXPECT_EQ(m_max(2, 30).where, MaxLocation::limit);
    for (auto [n, v] : printed)
    {
        MaxReport m = m_max(n, 30);
        // Six significant figures: within half a unit of the last printed digit.
        const double half_ulp = 0.5 * std::pow(10.0, std::floor(std::log10(v)) - 5);
        EXPECT_LE(std::fabs(m.value.to_double() - v), half_ulp * (1 + 1e-9)) << "M_" << n << " = " << m.value.to_sci(10);
        EXPECT_EQ(m.where, MaxLocation::boundary) << n;
    }
}

TEST(Maxima, FarBoundaryIsSmaller)
{
    // Far from x_10 the boundary value no longer dominates for n = 10.
    const Precision p = Precision::digits(30);
    MaxReport near = m_max(10, 30);
    MaxReport far = m_max_over(10, BigReal(10L, p), 30);
    EXPECT_LT(far.value, near.value);
}

TEST(ZConst, ThresholdsRoundUpToPublished)
{
    // Published thresholds and their number of decimals.
    const std::vector<std::pair<double, int>> printed = {{1.5, 1},    {2.3395, 4}, {3.3114, 4}, {4.3237, 4}, {5.3514, 4},
                                                         {6.3851, 4}, {7.4208, 4}, {8.4566, 4}, {9.4914, 4}, {10.5251, 4}};
    const std::vector<double> printed_prime = {32, 49.5, 82, 155, 113, 143, 187, 251, 353, 528};
    for (int N = 2; N <= 11; ++N)
    {
        ZReport z = z_const(N, 20);
        ASSERT_TRUE(z.violation_found) << N;
        auto [value, decimals] = printed[N - 2];
        const double scale = std::pow(10.0, decimals);
        EXPECT_EQ(std::ceil(z.z.to_double() * scale), std::llround(value * scale))
            << "z_" << N << " = " << z.z.to_fixed(8);
        EXPECT_LE(z.z_prime.to_double(), printed_prime[N - 2]) << N;
        EXPECT_GT(z.z_prime, z.x_K);
    }
}

TEST(ZConst, ErrorBelowTargetAboveThreshold)
{
    const Precision p = Precision::digits(30);
    for (int N : {2, 4, 7})
    {
        ZReport z = z_const(N, 20);
        const BigReal target = concrete_coefficient(N, p);
        for (double dx : {0.01, 0.3, 2.0, 10.0})
            EXPECT_LT(normalized_error(z.z.at(p) + BigReal(dx, p), N, 12), target) << N << " " << dx;
    }
}

TEST(PBound, ExactGrid)
{
    std::vector<BigRational> ys = {2, 5, 10, 50, BigRational(7, 3)};
    PBoundReport r = check_p_bound(30, ys);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.checked, ys.size() * 31);
    EXPECT_EQ(poly_P(1).eval(BigRational(2)), 0);
    EXPECT_THROW(check_p_bound(5, {BigRational(3, 2)}), DomainError);
}

TEST(PBound, ConjectureReportedSeparately)
{
    std::vector<BigRational> ys;
    for (int k = 0; k <= 200; ++k)
        ys.push_back(BigRational(2) + BigRational(98 * k, 200));
    PBoundReport r = check_p_bound(30, ys);
    EXPECT_TRUE(r.ok());
    EXPECT_GT(r.conjecture_checked, 0u);
    EXPECT_TRUE(r.conjecture_failures.empty());
}

TEST(Lemma54, QuadratureGrid)
{
    const Precision p = Precision::digits(30);
    EXPECT_TRUE(check_lemma_54(1, {exp(BigReal(3L, p))}).ok());
    Lemma54Report edge = check_lemma_54(1, {exp(BigReal(BigRational(8, 3), p))});
    ASSERT_EQ(edge.points.size(), 1u);
    EXPECT_EQ(edge.points[0].integral, 0.0);
    EXPECT_TRUE(edge.ok());
    for (int n : {1, 2, 5})
    {
        BigReal f = BigReal(BigRational(4 * (n + 1), 3), p);
        Lemma54Report r = check_lemma_54(n, {2L * exp(f), exp(BigReal(20L, p))});
        EXPECT_TRUE(r.ok()) << n;
    }
    EXPECT_THROW(check_lemma_54(2, {exp(BigReal(3L, p))}), DomainError);
}

TEST(Comparation, Grid)
{
    const Precision p = Precision::digits(30);
    std::vector<BigReal> grid = {BigReal(2L, p), exp(BigReal(2L, p)), BigReal(1000000L, p), BigReal(3L, p),
                                 BigReal::parse("1e50", p)};
    ComparationReport r = check_comparation(grid);
    EXPECT_TRUE(r.ok());
    EXPECT_TRUE(r.points[0].log_bound_checked);
    EXPECT_FALSE(r.points[0].linear_bound_checked);
    EXPECT_TRUE(r.points[1].linear_bound_checked);
    EXPECT_TRUE(r.points[2].linear_bound_checked);
}
