#include <cipolla/expansion.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace cipolla;

namespace
{
BigReal e_pow(double x, int digits = 60)
{
    return exp(BigReal(x, Precision::digits(digits)));
}

BigReal actual_error(const BigReal& u, int N, int digits)
{
    return abs(ali(u, digits) - expansion_value(u, N, digits));
}
} // namespace

TEST(BoundFor, Justifications)
{
    EXPECT_EQ(bound_for(e_pow(3), 3).justification, Justification::concrete);
    BoundCert none = bound_for(e_pow(5), 1);
    EXPECT_EQ(none.justification, Justification::none);
    EXPECT_TRUE(none.is_infinite());
    // Below the concrete threshold and below v_N: no certificate.
    EXPECT_EQ(bound_for(e_pow(2.3), 3).justification, Justification::none);
    // N = 1 is outside the concrete range; e^{x_1 + 1} is past v_1.
    EXPECT_EQ(bound_for(e_pow(8.5), 1).justification, Justification::tmain);
    // N = 12 is outside the concrete range too.
    EXPECT_EQ(bound_for(e_pow(20), 12).justification, Justification::tmain);
    EXPECT_EQ(bound_for(e_pow(10), 12).justification, Justification::none);
    EXPECT_THROW(bound_for(e_pow(10), 0), DomainError);
}

TEST(BoundFor, ConcreteRadiusFormula)
{
    const Precision p = Precision::digits(50);
    BigReal u = e_pow(20, 50);
    BoundCert c = bound_for(u, 5);
    ASSERT_EQ(c.justification, Justification::concrete);
    BigReal five(5L, p), twenty(20L, p);
    BigReal coeff = 20L * pow(five / (e_const(p) * log(five)), 5L);
    BigReal expect = coeff * pow(log(twenty), 5L) / pow(twenty, 6L) * twenty * u;
    EXPECT_LT((abs(c.radius - expect) / expect).to_double(), 1e-25);
    EXPECT_LE(actual_error(u, 5, 40), c.radius);
}

TEST(VConst, EqualsUForSmallOrders)
{
    for (int N = 1; N <= 10; ++N)
    {
        VReport v = compute_v(N);
        EXPECT_TRUE(v.equal) << N;
        EXPECT_EQ(v.u_N.to_sci(20), v.v_N.to_sci(20));
        EXPECT_LE(abs(v.H), v.majorant);
    }
}

TEST(BoundValidity, ConcreteOnLogSpacedGrid)
{
    for (int N = 2; N <= 11; ++N)
    {
        const double lo = std::log(concrete_threshold(N) + 0.1), hi = std::log(200.0);
        for (int i = 0; i < 30; ++i)
        {
            const double x = std::exp(lo + (hi - lo) * i / 29.0);
            BigReal u = e_pow(x);
            BoundCert c = bound_for(u, N);
            ASSERT_EQ(c.justification, Justification::concrete) << N << " " << x;
            EXPECT_LE(actual_error(u, N, 40), c.radius) << "N=" << N << " log u=" << x;
        }
    }
}

TEST(BoundValidity, GeneralRadius)
{
    for (int N = 1; N <= 10; ++N)
    {
        const double xN = x_const(N, 30).x.to_double();
        for (double x : {xN + 1, 2 * xN, 100.0})
        {
            BigReal u = e_pow(x);
            EXPECT_LE(actual_error(u, N, 40), tmain_radius(u, N)) << "N=" << N << " log u=" << x;
        }
    }
}

TEST(AutoExpand, TermsDecreaseUntilStop)
{
    ExpansionResult r = auto_expand(e_pow(10), 30);
    EXPECT_EQ(r.N_used, 10);
    for (int n = 1; n < r.N_used; ++n)
        EXPECT_LT(abs(r.terms[n]), abs(r.terms[n - 1]));
    std::vector<BigReal> more;
    (void)expansion_value(e_pow(10), r.N_used + 1, 30, &more);
    EXPECT_GE(abs(more[r.N_used]), abs(more[r.N_used - 1]));
    ASSERT_TRUE(r.heuristic_error.has_value());
    EXPECT_THROW(auto_expand(e_pow(1.4), 30), DomainError);
}

TEST(AutoExpand, GoogolExperiment)
{
    const Precision p = Precision::digits(160);
    BigReal u = BigReal::parse("1e100", p);
    ExpansionResult r = auto_expand(u, 140);
    EXPECT_EQ(r.N_used, 230);
    BigReal a = ali(u, 140);
    EXPECT_NEAR(abs(a - r.value).to_double(), 40.94738, 0.0005);
    EXPECT_EQ(integer_digits(a), 103u);
    std::vector<int> positive;
    for (int k = 1; k <= r.N_used; ++k)
        if (r.terms[k - 1].sign() > 0)
            positive.push_back(k);
    EXPECT_EQ(positive, (std::vector<int>{1, 2, 4}));
}
