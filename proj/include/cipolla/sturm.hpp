#ifndef CIPOLLA_STURM_HPP_INCLUDED
#define CIPOLLA_STURM_HPP_INCLUDED

#include <cipolla/big_real.hpp>
#include <cipolla/bigint.hpp>
#include <cipolla/errors.hpp>
#include <cipolla/exact_poly.hpp>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace cipolla
{
/// Dense rational polynomial used for remainder sequences (ascending order).
using RatPoly = std::vector<BigRational>;

namespace sturm_detail
{
inline void trim(RatPoly& p)
{
    while (!p.empty() && sgn(p.back()) == 0)
        p.pop_back();
}

inline RatPoly from_exact(const ExactPoly& p)
{
    RatPoly r;
    for (int k = 0; k <= p.degree(); ++k)
        r.push_back(p.coeff(static_cast<std::size_t>(k)));
    return r;
}

inline RatPoly derivative(const RatPoly& p)
{
    RatPoly d;
    for (std::size_t k = 1; k < p.size(); ++k)
        d.push_back(p[k] * static_cast<unsigned long>(k));
    trim(d);
    return d;
}

/// Remainder of a / b (b nonzero).
inline RatPoly remainder(RatPoly a, const RatPoly& b)
{
    trim(a);
    while (a.size() >= b.size() && !a.empty())
    {
        BigRational f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t k = 0; k < b.size(); ++k)
            a[k + shift] -= f * b[k];
        a.pop_back();
        trim(a);
    }
    return a;
}

/// Exact quotient a / b (b divides a).
inline RatPoly quotient(RatPoly a, const RatPoly& b)
{
    trim(a);
    if (a.size() < b.size())
        return {};
    RatPoly q(a.size() - b.size() + 1);
    while (a.size() >= b.size() && !a.empty())
    {
        BigRational f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = f;
        for (std::size_t k = 0; k < b.size(); ++k)
            a[k + shift] -= f * b[k];
        a.pop_back();
        trim(a);
    }
    return q;
}

inline RatPoly monic(RatPoly p)
{
    trim(p);
    if (p.empty())
        return p;
    BigRational lead = p.back();
    for (auto& c : p)
        c /= lead;
    return p;
}

inline RatPoly gcd(RatPoly a, RatPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty())
    {
        RatPoly r = remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

inline BigRational eval(const RatPoly& p, const BigRational& x)
{
    BigRational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

/// Positive multiple of p with coprime integer coefficients.
inline std::vector<BigInt> primitive(const RatPoly& p)
{
    BigInt l = 1;
    for (const auto& c : p)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<BigInt> out;
    BigInt g = 0;
    for (const auto& c : p)
    {
        out.push_back(BigInt(c.get_num() * (l / c.get_den())));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
    }
    if (g > 1)
        for (auto& c : out)
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return out;
}

/// sign p(num/den), den > 0, by homogeneous integer Horner.
inline int sign_at(const std::vector<BigInt>& p, const BigRational& x)
{
    if (p.empty())
        return 0;
    const BigInt& num = x.get_num();
    const BigInt& den = x.get_den();
    BigInt acc = p.back();
    BigInt den_pow = 1;
    for (std::size_t i = p.size() - 1; i-- > 0;)
    {
        den_pow *= den;
        acc = acc * num + p[i] * den_pow;
    }
    return sgn(acc);
}
} // namespace sturm_detail

/// Sturm chain of the square-free part of a polynomial.
class SturmSequence
{
public:
    explicit SturmSequence(const ExactPoly& p) : SturmSequence(sturm_detail::from_exact(p)) {}

    explicit SturmSequence(RatPoly p)
    {
        using namespace sturm_detail;
        trim(p);
        if (p.empty())
            throw DomainError("SturmSequence: zero polynomial");
        RatPoly g = gcd(p, derivative(p));
        RatPoly sf = g.size() > 1 ? quotient(p, g) : p;
        chain_.push_back(sf);
        chain_.push_back(derivative(sf));
        trim(chain_.back());
        while (chain_.back().size() > 0)
        {
            RatPoly r = remainder(chain_[chain_.size() - 2], chain_.back());
            if (r.empty())
                break;
            for (auto& c : r)
                c = -c;
            chain_.push_back(std::move(r));
        }
        if (chain_.back().empty())
            chain_.pop_back();
        for (const auto& q : chain_)
            integral_.push_back(primitive(q));
    }

    const RatPoly& squarefree() const noexcept
    {
        return chain_.front();
    }

    /// sign of the square-free part at x.
    int sign_at(const BigRational& x) const
    {
        return sturm_detail::sign_at(integral_.front(), x);
    }

    /// Sign changes of the chain at x.
    int variations(const BigRational& x) const
    {
        int count = 0, last = 0;
        for (const auto& q : integral_)
        {
            int s = sturm_detail::sign_at(q, x);
            if (s == 0)
                continue;
            if (last != 0 && s != last)
                ++count;
            last = s;
        }
        return count;
    }

    /// Number of distinct real roots in (a, b].
    int count(const BigRational& a, const BigRational& b) const
    {
        return variations(a) - variations(b);
    }

    /// Strict bound on the modulus of every root (Cauchy).
    BigRational root_bound() const
    {
        const RatPoly& p = squarefree();
        BigRational m = 0;
        for (std::size_t k = 0; k + 1 < p.size(); ++k)
        {
            BigRational r = abs(p[k] / p.back());
            if (r > m)
                m = r;
        }
        return m + 1;
    }

private:
    std::vector<RatPoly> chain_;
    std::vector<std::vector<BigInt>> integral_; // primitive integer multiples of chain_
};

/// One isolated real root: lo < root <= hi, exactly one root of the
/// polynomial in the interval; `value` refined to the requested digits.
struct IsolatedRoot
{
    BigRational lo;
    BigRational hi;
    BigReal value{Precision::digits(20)};
    bool exact = false; // lo == hi == root
};

/// All distinct real roots, ascending, refined by bisection until the
/// enclosure width is below 10^-digits (relative to max(1, |root|)).
inline std::vector<IsolatedRoot> isolate_real_roots(const ExactPoly& poly, int digits)
{
    using namespace sturm_detail;
    require_digits(digits);
    if (poly.is_zero())
        throw DomainError("isolate_real_roots: zero polynomial");
    std::vector<IsolatedRoot> out;
    if (poly.degree() < 1)
        return out;
    SturmSequence chain(poly);

    // Pick a split point inside (a, b) that is not itself a root.
    auto split = [&](const BigRational& a, const BigRational& b) {
        BigRational m = (a + b) / 2;
        while (chain.sign_at(m) == 0)
            m = (m + b) / 2;
        return m;
    };

    // A power of two keeps every split point dyadic.
    BigRational B = 1;
    for (const BigRational bound = chain.root_bound(); B < bound;)
        B *= 2;
    std::vector<std::pair<BigRational, BigRational>> work{{-B, B}};
    std::vector<std::pair<BigRational, BigRational>> isolated;
    while (!work.empty())
    {
        auto [a, b] = work.back();
        work.pop_back();
        int c = chain.count(a, b);
        if (c == 0)
            continue;
        if (c == 1)
        {
            isolated.emplace_back(a, b);
            continue;
        }
        BigRational m = split(a, b);
        work.emplace_back(a, m);
        work.emplace_back(m, b);
    }
    std::sort(isolated.begin(), isolated.end(), [](const auto& l, const auto& r) { return l.first < r.first; });

    const Precision prec = Precision::digits(digits + 5);
    for (auto [a, b] : isolated)
    {
        IsolatedRoot root;
        int sa = chain.sign_at(a);
        BigRational unit = 1;
        for (int d = 0; d < digits; ++d)
            unit /= 10;
        auto wide = [&](const BigRational& lo, const BigRational& hi) {
            BigRational m = std::min(BigRational(abs(lo)), BigRational(abs(hi)));
            return hi - lo > unit * std::max(BigRational(1), m);
        };
        // Endpoints are never roots (split points and the bound avoid them).
        while (wide(a, b))
        {
            BigRational m = (a + b) / 2;
            int sm = chain.sign_at(m);
            if (sm == 0)
            {
                a = b = m;
                root.exact = true;
                break;
            }
            if (sm == sa)
                a = m;
            else
                b = m;
        }
        root.lo = a;
        root.hi = b;
        root.value = BigReal(BigRational((a + b) / 2), prec).at(Precision::digits(digits));
        out.push_back(std::move(root));
    }
    return out;
}
} // namespace cipolla

#endif // CIPOLLA_STURM_HPP_INCLUDED
