// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Exit status is 0 when every outcome is the expected one; criterion 7's
// small-range clause is known not to hold as stated (see README), so its
// FAIL is expected as long as the violators are exactly the oracle set.

#include <cipolla/constants.hpp>
#include <cipolla/expansion.hpp>
#include <cipolla/numerics.hpp>
#include <cipolla/polyengine.hpp>
#include <cipolla/primes.hpp>
#include <cipolla/sturm.hpp>

#include "../support/printed.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace cipolla;
using cipolla::testing::matches_printed;

namespace
{
struct Outcome
{
    bool pass = true;
    bool expected = true; // false only for an unexplained result
    std::string detail;
};

class Notes
{
public:
    void fail(const std::string& what)
    {
        pass_ = false;
        if (!text_.empty())
            text_ += "; ";
        text_ += what;
    }
    void note(const std::string& what)
    {
        if (!text_.empty())
            text_ += "; ";
        text_ += what;
    }
    void check(bool ok, const std::string& what)
    {
        if (!ok)
            fail(what);
    }
    Outcome outcome() const
    {
        return {pass_, pass_, text_};
    }

private:
    bool pass_ = true;
    std::string text_;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int prec = 2)
{
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(prec);
    os << v;
    return os.str();
}

std::vector<BigInt> ints(std::initializer_list<const char*> xs)
{
    std::vector<BigInt> v;
    for (const char* s : xs)
        v.emplace_back(s);
    return v;
}

// ---- 1 ----------------------------------------------------------------------
Outcome triangles()
{
    const std::vector<std::vector<BigInt>> a = {
        ints({"1"}),
        ints({"1", "2"}),
        ints({"1", "6", "11"}),
        ints({"2", "21", "84", "131"}),
        ints({"6", "92", "588", "1908", "2666"}),
        ints({"24", "490", "4380", "22020", "62860", "81534"}),
        ints({"120", "3084", "35790", "246480", "1075020", "2823180", "3478014"}),
        ints({"720", "22428", "322224", "2838570", "16775640", "66811920", "165838848", "196993194"}),
    };
    const std::vector<std::vector<BigInt>> b = {
        ints({"1", "1"}),
        ints({"1", "4", "5"}),
        ints({"2", "15", "42", "47"}),
        ints({"6", "68", "312", "732", "758"}),
        ints({"24", "370", "2420", "8880", "18820", "18674"}),
        ints({"120", "2364", "20370", "103320", "335580", "673140", "654834"}),
        ints({"720", "17388", "187656", "1227450", "5421360", "16485000", "32215008", "31154346"}),
    };
    Notes n;
    auto t0 = std::chrono::steady_clock::now();
    CoeffTriangle ta = coeff_triangle_a(7);
    CoeffTriangle tb = coeff_triangle_b(7);
    const double secs = seconds_since(t0);
    int entries = 0;
    for (int r = 0; r <= 7; ++r)
        for (int k = 0; k <= r; ++k, ++entries)
            n.check(ta.at(r, k) == a[r][k], "a(" + std::to_string(r) + "," + std::to_string(k) + ")");
    for (int r = 1; r <= 7; ++r)
        for (int k = 0; k <= r; ++k, ++entries)
            n.check(tb.at(r, k) == b[r - 1][k], "b(" + std::to_string(r) + "," + std::to_string(k) + ")");
    n.check(secs < 1.0, "runtime");
    n.note(std::to_string(entries) + " entries, " + fmt(secs, 3) + " s");
    return n.outcome();
}

// ---- 2 ----------------------------------------------------------------------
Outcome three_way()
{
    Notes n;
    auto t0 = std::chrono::steady_clock::now();
    auto fp = gen_P_fixed_point(60);
    auto rec = gen_P_recurrence(60);
    auto tri = gen_P_triangle(60);
    const double secs = seconds_since(t0);
    for (int k = 0; k <= 60; ++k)
    {
        n.check(fp[k] == rec[k], "fixed point vs recurrence at " + std::to_string(k));
        n.check(rec[k] == tri[k], "recurrence vs triangle at " + std::to_string(k));
    }
    n.check(secs < 30.0, "runtime");
    n.note("n <= 60, " + fmt(secs) + " s");
    return n.outcome();
}

// ---- 3 ----------------------------------------------------------------------
Outcome a_values()
{
    Notes n;
    const std::vector<long> first = {1, 5, 25, 137, 841, 5825, 45529, 399713, 3911785, 42302225};
    auto a = a_sequence(500);
    for (std::size_t i = 0; i < first.size(); ++i)
        n.check(a[i] == first[i], "a_" + std::to_string(i + 1));
    for (int k = 1; k <= 500; ++k)
        n.check(a[k - 1] <= 2 * k * factorial(static_cast<unsigned long>(k)), "bound at " + std::to_string(k));
    n.note("first 10 exact, bound to n = 500");
    return n.outcome();
}

// ---- 4 ----------------------------------------------------------------------
Outcome constants_tables()
{
    struct Row
    {
        int N;
        double c, d, x;
    };
    const std::vector<Row> table = {
        {1, 2, 1.03922, 7.38906},           {2, 2.73205, 2.38568, 7.38906},     {3, 3.20701, 3.33232, 7.38906},
        {4, 3.56383, 3.92171, 8.29874},     {5, 3.86841, 4.28707, 9.77283},     {6, 4.15213, 4.54145, 10.81135},
        {7, 4.43119, 4.75734, 11.70187},    {8, 4.71412, 4.97336, 12.60164},    {9, 5.00517, 5.20626, 13.58167},
        {10, 5.30597, 5.46090, 14.66667},   {11, 5.61664, 5.73661, 16.00000},   {12, 5.93649, 6.03061, 17.33333},
        {13, 6.26449, 6.33969, 18.66667},   {14, 6.59947, 6.66091, 20.00000},   {15, 6.94035, 6.99175, 21.42740},
        {20, 8.70335, 8.73298, 29.57923},   {30, 12.34925, 12.37349, 47.86556}, {40, 16.03475, 16.05983, 67.69154},
        {50, 19.72833, 19.75448, 88.57644}, {60, 23.42351, 23.45053, 110.29065},
    };
    const std::vector<std::pair<double, int>> z_printed = {{1.5, 1},    {2.3395, 4}, {3.3114, 4}, {4.3237, 4},
                                                           {5.3514, 4}, {6.3851, 4}, {7.4208, 4}, {8.4566, 4},
                                                           {9.4914, 4}, {10.5251, 4}};
    const std::vector<double> m_printed = {1, 0.5, 1.0 / 3, 0.250636, 0.526887, 1.300565, 3.719653, 12.070813, 43.788782};

    Notes n;
    auto t0 = std::chrono::steady_clock::now();
    auto same5 = [](const BigReal& v, double p) { return std::llround(v.to_double() * 1e5) == std::llround(p * 1e5); };
    for (const auto& r : table)
    {
        ConstantsRow row = x_const(r.N, 30);
        n.check(same5(row.c, r.c), "c_" + std::to_string(r.N) + " = " + row.c.to_fixed(7));
        n.check(same5(row.d, r.d), "d_" + std::to_string(r.N) + " = " + row.d.to_fixed(7));
        n.check(same5(row.x, r.x), "x_" + std::to_string(r.N) + " = " + row.x.to_fixed(7));
    }
    // Thresholds are valid when rounded up, so compare ceil at the printed decimals.
    int nearest_mismatch = 0;
    for (int N = 2; N <= 11; ++N)
    {
        ZReport z = z_const(N, 30);
        auto [v, dec] = z_printed[N - 2];
        const double scale = std::pow(10.0, dec);
        const double ours = z.z.to_double();
        n.check(z.violation_found && std::ceil(ours * scale) == std::llround(v * scale),
                "z_" + std::to_string(N) + " = " + z.z.to_fixed(7));
        if (std::llround(ours * 1e4) != std::llround(v * 1e4))
            ++nearest_mismatch;
    }
    for (int k = 2; k <= 10; ++k)
    {
        MaxReport m = m_max(k, 30);
        const double p = m_printed[k - 2];
        const double half_ulp = 0.5 * std::pow(10.0, std::floor(std::log10(p)) - 5);
        n.check(std::fabs(m.value.to_double() - p) <= half_ulp * (1 + 1e-9), "M_" + std::to_string(k));
    }
    const double secs = seconds_since(t0);
    n.check(secs < 300, "runtime");
    n.note("60 table values, z rounded up at printed decimals (" + std::to_string(nearest_mismatch)
           + " differ under round-to-nearest at 4 decimals), 9 maxima, " + fmt(secs) + " s");
    return n.outcome();
}

// ---- 5 ----------------------------------------------------------------------
Outcome googol()
{
    Notes n;
    auto t0 = std::chrono::steady_clock::now();
    const Precision p = Precision::digits(160);
    const BigReal u = BigReal::parse("1e100", p);
    ExpansionResult r = auto_expand(u, 140);
    BigReal a = ali(u, 140);
    const double err = abs(a - r.value).to_double();
    const double secs = seconds_since(t0);
    n.check(r.N_used == 230, "N_used = " + std::to_string(r.N_used));
    n.check(std::fabs(err - 40.94738) <= 0.0005, "error = " + fmt(err, 6));
    n.check(integer_digits(a) == 103, "digits = " + std::to_string(integer_digits(a)));
    n.check(secs < 120, "runtime");
    n.note("N_used " + std::to_string(r.N_used) + ", |ali - f_N| = " + fmt(err, 6) + ", " + fmt(secs) + " s");
    return n.outcome();
}

// ---- 6 ----------------------------------------------------------------------
Outcome r3()
{
    Notes n;
    auto t0 = std::chrono::steady_clock::now();
    R3Report r = r3_window(45);
    const double secs = seconds_since(t0);
    n.check(std::fabs(r.y0.to_double() - 4.254946453) <= 1e-8, "y0 = " + r.y0.to_sci(12));
    n.check(matches_printed(r.s3, "2.87527 18639 02974 79681 42399 35057 89294 02005 87915", 32), "s_3");
    n.check(matches_printed(r.ali_n, "2.87527 18639 02495 21516 14800 14732 45414 39731", 32), "ali");
    n.check(matches_printed(r.upper, "2.87527 18639 02756 97808 39055 05640 30082 86370 11482", 32), "upper");
    n.check(r.upper_below_s3, "upper < s_3");
    n.check(secs < 60, "runtime");
    n.note("y0 = " + r.y0.to_sci(12) + ", " + fmt(secs) + " s");
    return n.outcome();
}

// ---- 7 ----------------------------------------------------------------------
Outcome tdistance()
{
    Notes n;
    auto t0 = std::chrono::steady_clock::now();
    SweepReport small = check_tdistance(1, 385);
    SweepReport big = check_tdistance(11, 1000000, 30, 4);
    const double secs = seconds_since(t0);
    const std::vector<std::uint64_t> stated = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const std::vector<std::uint64_t> oracle = {1, 3, 5, 6, 7, 10};
    std::string got;
    for (auto v : small.violations)
        got += (got.empty() ? "" : ",") + std::to_string(v);
    n.check(small.violations == stated, "violators in [1,385] are {" + got + "}, not {1..10}");
    n.check(big.ok(), std::to_string(big.violations.size()) + " violations in [11,1e6]");
    n.check(secs < 300, "runtime");
    n.note("[11,1e6] " + std::to_string(big.violations.size()) + " violations, " + fmt(secs) + " s");
    Outcome o = n.outcome();
    // Only the small-range clause may fail, and only with the oracle's set.
    o.expected = o.pass || (small.violations == oracle && big.ok() && secs < 300);
    if (!o.pass && o.expected)
        o.detail += "; known: n = 2, 4, 8, 9 satisfy the inequality";
    return o;
}

// ---- 8 ----------------------------------------------------------------------
Outcome classical()
{
    Notes n;
    auto t0 = std::chrono::steady_clock::now();
    ClassicalReport r = check_classical(1000000, 4);
    n.check(r.lower_nlogn.ok(), "p_n >= n log n");
    n.check(r.lower_second.ok(), "p_n >= n(log n + loglog n - 1)");
    n.check(r.upper.ok(), "upper bound");
    n.check(r.upper.lo == 688383, "upper range start");
    n.note(std::to_string(r.lower_nlogn.checked + r.lower_second.checked + r.upper.checked) + " comparisons, "
           + fmt(seconds_since(t0)) + " s");
    return n.outcome();
}

// ---- 9 ----------------------------------------------------------------------
Outcome roots()
{
    const std::vector<std::string> odd = {"2",       "4.23415", "5.83131", "7.43591", "9.07979", "10.6881",
                                          "12.2538", "13.7876", "15.2977", "16.79",   "18.2683", "19.7353"};
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"6.4306", "8.2185"}, {"7.16158", "9.88528"}, {"7.90293", "11.4752"}, {"8.63359", "13.0241"},
        {"9.3507", "14.5452"}, {"10.055", "16.0458"}, {"10.7478", "17.5307"}, {"11.4307", "19.003"},
    };
    auto same = [](const BigReal& v, const std::string& printed) {
        auto dot = printed.find('.');
        int d = dot == std::string::npos ? 0 : static_cast<int>(printed.size() - dot - 1);
        return v.to_fixed(d) == printed;
    };
    Notes n;
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < 12; ++i)
    {
        auto r = real_roots(2 * i + 1, 20);
        n.check(r.size() == 1 && same(r[0].value, odd[i]), "P_" + std::to_string(2 * i + 1));
    }
    for (int k : {2, 4, 6})
        n.check(real_roots(k, 20).empty(), "P_" + std::to_string(k) + " has real roots");
    for (int i = 0; i < 8; ++i)
    {
        auto r = real_roots(8 + 2 * i, 20);
        n.check(r.size() == 2 && same(r[0].value, pairs[i].first) && same(r[1].value, pairs[i].second),
                "P_" + std::to_string(8 + 2 * i));
    }
    n.note("12 odd, 3 empty, 8 pairs, " + fmt(seconds_since(t0)) + " s");
    return n.outcome();
}

// ---- 10 ---------------------------------------------------------------------
Outcome bound_validity()
{
    Notes n;
    auto t0 = std::chrono::steady_clock::now();
    int points = 0;
    for (int N = 2; N <= 11; ++N)
    {
        const double lo = std::log(concrete_threshold(N) + 0.1), hi = std::log(200.0);
        for (int i = 0; i < 30; ++i, ++points)
        {
            const double x = std::exp(lo + (hi - lo) * i / 29.0);
            const BigReal u = exp(BigReal(x, Precision::digits(60)));
            BoundCert c = bound_for(u, N);
            const BigReal err = abs(ali(u, 40) - expansion_value(u, N, 40));
            n.check(c.justification == Justification::concrete && err <= c.radius,
                    "concrete N=" + std::to_string(N) + " log u=" + fmt(x, 4));
        }
    }
    for (int N = 1; N <= 10; ++N)
    {
        const double xN = x_const(N, 30).x.to_double();
        for (double x : {xN + 1, 2 * xN, 100.0})
        {
            ++points;
            const BigReal u = exp(BigReal(x, Precision::digits(60)));
            const BigReal err = abs(ali(u, 40) - expansion_value(u, N, 40));
            n.check(err <= tmain_radius(u, N), "general N=" + std::to_string(N) + " log u=" + fmt(x, 4));
        }
    }
    n.note(std::to_string(points) + " points, " + fmt(seconds_since(t0)) + " s");
    return n.outcome();
}

// ---- 11 ---------------------------------------------------------------------
Outcome complexity()
{
    Notes n;
    for (int N : {2, 10, 50, 100})
        n.check(op_count_model(N) == op_count_formula(N), "ops at N=" + std::to_string(N));
    auto time_of = [](int N) {
        double best = 1e300;
        for (int rep = 0; rep < 3; ++rep)
        {
            auto t0 = std::chrono::steady_clock::now();
            (void)coeff_triangle_a(N);
            best = std::min(best, seconds_since(t0));
        }
        return best;
    };
    const double t200 = time_of(200), t400 = time_of(400);
    n.note("counts match; t(400)/t(200) = " + fmt(t400 / t200) + " (reported only; ops ratio 4, entries grow in size)");
    return n.outcome();
}

// ---- 12 ---------------------------------------------------------------------
using Mp = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<70>>;

Outcome numerics_oracles()
{
    Notes n;
    const char* li2 = "1.04516378011749278484458888919461313652261557815120157583291";
    boost::math::quadrature::tanh_sinh<Mp> integrator(15, Mp("1e-200"));
    for (const char* xs : {"5", "10", "100", "1000000"})
    {
        const Mp x(xs);
        Mp total(li2), a = 2;
        while (a < x)
        {
            Mp b = a * 8 > x ? x : a * 8;
            total += integrator.integrate([](const Mp& t) { return Mp(1) / log(t); }, a, b, Mp("1e-45"));
            a = b;
        }
        const Precision p = Precision::digits(60);
        BigReal oracle = BigReal::parse(total.str(60, std::ios_base::scientific), p);
        BigReal v = li(BigReal::parse(xs, p), 40);
        n.check((abs(v - oracle) / oracle).to_double() < 1e-30, std::string("li(") + xs + ")");
    }
    const Precision p = Precision::digits(70);
    for (const char* us : {"1e3", "1e6", "1e10", "1e20"})
    {
        BigReal u = BigReal::parse(us, p);
        BigReal back = li(ali(u, 50).at(p), 55);
        n.check((abs(back - u) / u).to_double() <= 1e-45, std::string("li(ali(") + us + "))");
    }
    for (const char* xs : {"10", "1e5"})
    {
        BigReal x = BigReal::parse(xs, p);
        BigReal back = ali(li(x, 60), 50);
        n.check((abs(back - x) / x).to_double() <= 1e-45, std::string("ali(li(") + xs + "))");
    }
    n.note("4 quadrature points, 6 round trips");
    return n.outcome();
}
} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"triangle fidelity", triangles},
        {"three-way polynomial equivalence", three_way},
        {"a_n sequence", a_values},
        {"constants tables", constants_tables},
        {"ali(1e100) experiment", googol},
        {"r3 window", r3},
        {"prime distance sweep", tdistance},
        {"classical bounds sweep", classical},
        {"root catalog", roots},
        {"bound validity", bound_validity},
        {"complexity", complexity},
        {"numerics oracles", numerics_oracles},
    };
    int unexpected = 0, failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        Outcome o;
        try
        {
            o = criteria[i].second();
        }
        catch (const std::exception& e)
        {
            o = {false, false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        unexpected += !o.expected;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1 < 10 ? " " : "") << i + 1 << ". "
                  << criteria[i].first << ": " << o.detail << (o.pass || !o.expected ? "" : " [expected]") << '\n'
                  << std::flush;
    }
    std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria pass";
    if (failed && !unexpected)
        std::cout << "; every failure is the documented one";
    std::cout << '\n';
    return unexpected == 0 ? 0 : 1;
}
