#include <cipolla/primes.hpp>
#include <cipolla/sturm.hpp>

#include "support/printed.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

using namespace cipolla;
using cipolla::testing::matches_printed;

namespace
{
int decimals_of(const std::string& s)
{
    auto dot = s.find('.');
    return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

bool matches_fixed(const BigReal& v, const std::string& printed)
{
    const int d = decimals_of(printed);
    return v.to_fixed(d) == printed;
}

const std::vector<std::string> kOddRoots = {"2",       "4.23415", "5.83131", "7.43591", "9.07979", "10.6881",
                                            "12.2538", "13.7876", "15.2977", "16.79",   "18.2683", "19.7353"};

const std::vector<std::pair<std::string, std::string>> kEvenPairs = {
    {"6.4306", "8.2185"},   {"7.16158", "9.88528"}, {"7.90293", "11.4752"}, {"8.63359", "13.0241"},
    {"9.3507", "14.5452"},  {"10.055", "16.0458"},  {"10.7478", "17.5307"}, {"11.4307", "19.003"},
};
} // namespace

TEST(Sieve, SmallPrimesAndCounts)
{
    PrimeTable t(1000);
    EXPECT_EQ(t.nth(1), 2u);
    EXPECT_EQ(t.nth(6), 13u);
    EXPECT_EQ(t.pi(100), 25u);
    EXPECT_EQ(t.pi(1000), 168u);
    EXPECT_EQ(t.count(), 168u);
    EXPECT_TRUE(t.is_prime(997));
    EXPECT_FALSE(t.is_prime(999));
    EXPECT_FALSE(t.is_prime(1));
    EXPECT_TRUE(t.is_prime(2));
    EXPECT_THROW(t.pi(1001), OutOfRange);
    EXPECT_THROW(t.nth(169), OutOfRange);
    auto ps = t.primes();
    for (std::size_t i = 1; i < ps.size(); ++i)
        EXPECT_LT(ps[i - 1], ps[i]);
}

TEST(Sieve, SegmentSizesAgreeWithTrialDivision)
{
    const std::uint64_t n = 200003;
    PrimeTable a(n, kDefaultSieveCap, 64), b(n, kDefaultSieveCap, 1u << 12), c(n);
    EXPECT_EQ(a.primes(), b.primes());
    EXPECT_EQ(a.primes(), c.primes());
    for (std::uint64_t k = 0; k <= 5000; ++k)
    {
        bool prime = k >= 2;
        for (std::uint64_t d = 2; d * d <= k && prime; ++d)
            prime = k % d != 0;
        EXPECT_EQ(c.is_prime(k), prime) << k;
    }
}

TEST(Sieve, NthPrimeMillion)
{
    const std::uint64_t p = nth_prime(1000000);
    PrimeTable other(p + 10, kDefaultSieveCap, 1u << 15);
    EXPECT_EQ(other.nth(1000000), p);
    EXPECT_EQ(p, 15485863u);
    EXPECT_THROW(nth_prime(0), DomainError);
    EXPECT_THROW(nth_prime(1000000, 1000), OutOfRange);
    EXPECT_THROW(PrimeTable(2000, 1000), OutOfRange);
}

TEST(SN, Definitions)
{
    const Precision p = Precision::digits(40);
    BigReal hundred(100L, p);
    EXPECT_LT(abs(s_N(hundred, 0, 30) - hundred * log(hundred)).to_double(), 1e-25);
    for (long n : {2L, 17L, 100000L})
    {
        BigReal nn(n, p);
        BigReal expect = nn * (log(nn) + log(log(nn)) - 1L);
        EXPECT_LT((abs(s_N(nn, 1, 30) - expect) / expect).to_double(), 1e-28) << n;
    }
    EXPECT_THROW(s_N(BigReal(1L, p), 1, 30), DomainError);
    EXPECT_TRUE(matches_printed(s_N(BigReal::parse("39e29", Precision::digits(70)), 3, 55),
                                "2.87527 18639 02974 79681 42399 35057 89294 02005 87915", 32));
}

TEST(PrimeDistance, SmallRangeViolators)
{
    SweepReport r = check_tdistance(1, 385);
    EXPECT_EQ(r.checked, 385u);
    // Independent high-precision recomputation gives exactly these.
    EXPECT_EQ(r.violations, (std::vector<std::uint64_t>{1, 3, 5, 6, 7, 10}));
    EXPECT_TRUE(check_tdistance(11, 11).ok());
}

TEST(PrimeDistance, SweepToMillion)
{
    SweepReport r = check_tdistance(11, 1000000, 30, 4);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.checked, 1000000u - 10u);
}

TEST(Classical, SweepToMillion)
{
    ClassicalReport r = check_classical(1000000, 4);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.lower_nlogn.checked, 999999u);
    EXPECT_EQ(r.upper.lo, 688383u);
    EXPECT_TRUE(check_classical(688383).upper.ok());
    ClassicalReport tiny = check_classical(2);
    EXPECT_TRUE(tiny.ok());
}

TEST(Schoenfeld, SweepToMillion)
{
    EXPECT_TRUE(check_schoenfeld(2658).ok());
    SweepReport r = check_schoenfeld(1000000, 4);
    EXPECT_TRUE(r.ok());
    EXPECT_GT(r.checked, 70000u);
}

TEST(Sturm, CountsOnKnownPolynomials)
{
    // (y - 1)(y - 2)(y - 3) and (y^2 + 1)(y - 5)^2
    ExactPoly cubic({BigInt(-6), BigInt(11), BigInt(-6), BigInt(1)});
    SturmSequence s(cubic);
    EXPECT_EQ(s.count(0, 10), 3);
    EXPECT_EQ(s.count(1, 2), 1);
    EXPECT_EQ(s.count(BigRational(3, 2), BigRational(5, 2)), 1);
    auto roots = isolate_real_roots(cubic, 20);
    ASSERT_EQ(roots.size(), 3u);
    for (int i = 0; i < 3; ++i)
        EXPECT_LT(std::fabs(roots[i].value.to_double() - (i + 1)), 1e-15);

    ExactPoly q({BigInt(25), BigInt(-10), BigInt(26), BigInt(-10), BigInt(1)});
    auto r2 = isolate_real_roots(q, 25);
    ASSERT_EQ(r2.size(), 1u);
    EXPECT_LT(std::fabs(r2[0].value.to_double() - 5), 1e-15);
}

TEST(Roots, OddIndexSingleRoot)
{
    for (int i = 0; i < 12; ++i)
    {
        const int n = 2 * i + 1;
        auto roots = real_roots(n, 20);
        ASSERT_EQ(roots.size(), 1u) << "P_" << n;
        EXPECT_GT(roots[0].value.sign(), 0);
        EXPECT_TRUE(matches_fixed(roots[0].value, kOddRoots[i]))
            << "P_" << n << " root " << roots[0].value.to_fixed(8) << " vs " << kOddRoots[i];
        SturmSequence chain(poly_P(n));
        if (roots[0].exact)
            EXPECT_EQ(poly_P(n).eval(roots[0].lo), 0);
        else
            EXPECT_EQ(chain.count(roots[0].lo, roots[0].hi), 1);
    }
    EXPECT_LT(std::fabs(real_roots(1, 30)[0].value.to_double() - 2), 1e-25);
}

TEST(Roots, EvenIndex)
{
    for (int n : {2, 4, 6})
        EXPECT_TRUE(real_roots(n, 20).empty()) << n;
    for (int i = 0; i < 8; ++i)
    {
        const int n = 8 + 2 * i;
        auto roots = real_roots(n, 20);
        ASSERT_EQ(roots.size(), 2u) << "P_" << n;
        EXPECT_GT(roots[0].value.sign(), 0);
        EXPECT_TRUE(roots[0].hi <= roots[1].lo);
        EXPECT_TRUE(matches_fixed(roots[0].value, kEvenPairs[i].first)) << n << " " << roots[0].value.to_fixed(8);
        EXPECT_TRUE(matches_fixed(roots[1].value, kEvenPairs[i].second)) << n << " " << roots[1].value.to_fixed(8);
    }
}

TEST(Roots, P10PositiveOnlyBetweenItsRoots)
{
    const ExactPoly P = poly_P(10);
    auto roots = real_roots(10, 20);
    ASSERT_EQ(roots.size(), 2u);
    const BigRational a = roots[0].lo, b = roots[1].hi;
    EXPECT_GT(P.eval((a + b) / 2), 0);
    for (BigRational y : {BigRational(1, 10), BigRational(1), BigRational(7), BigRational(10), BigRational(50)})
        EXPECT_LT(P.eval(y), 0) << y.get_str();
    EXPECT_GT(P.eval(BigRational(8)), 0);
    EXPECT_GT(P.eval(BigRational(9)), 0);
}

TEST(LeadingCoefficient, AlternatingReciprocal)
{
    auto table = shared_polynomials(200);
    for (int k = 1; k <= 200; ++k)
    {
        const ExactPoly& P = table->P(k);
        ASSERT_EQ(P.degree(), k);
        EXPECT_EQ(P.leading_coeff(), BigRational(k % 2 == 1 ? 1 : -1, k)) << k;
    }
}

TEST(R3, WindowReproduction)
{
    R3Report r = r3_window(45);
    EXPECT_LT(std::fabs(r.y0.to_double() - 4.254946453), 1e-8);
    EXPECT_LT((r.y0_hi - r.y0_lo).to_double(), 1e-9);
    EXPECT_TRUE(matches_printed(r.n_threshold, "3.95702224148845656", 30));
    EXPECT_TRUE(matches_printed(r.s3, "2.87527 18639 02974 79681 42399 35057 89294 02005 87915", 32));
    EXPECT_TRUE(matches_printed(r.ali_n, "2.87527 18639 02495 21516 14800 14732 45414 39731", 32));
    EXPECT_TRUE(matches_printed(r.upper, "2.87527 18639 02756 97808 39055 05640 30082 86370 11482", 32));
    EXPECT_TRUE(r.upper_below_s3);
    EXPECT_LT(r.n, r.n_threshold);
    EXPECT_THROW(r3_window(30), DomainError);
}
