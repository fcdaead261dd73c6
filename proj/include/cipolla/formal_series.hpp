#ifndef CIPOLLA_FORMAL_SERIES_HPP_INCLUDED
#define CIPOLLA_FORMAL_SERIES_HPP_INCLUDED

#include <cipolla/errors.hpp>
#include <cipolla/exact_poly.hpp>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace cipolla
{
/// Truncated element of the local ring of series  sum_{n>=0} q_n(y) / x^n
/// with deg q_n <= n. Everything beyond `order()` is discarded by every
/// operation, so arithmetic is exact modulo x^{-(order+1)}.
class FormalSeries
{
public:
    explicit FormalSeries(int order = 0) : terms_(static_cast<std::size_t>(check_order(order)) + 1) {}

    FormalSeries(int order, std::vector<ExactPoly> terms) : FormalSeries(order)
    {
        for (std::size_t n = 0; n < terms.size() && n < terms_.size(); ++n)
            set(static_cast<int>(n), std::move(terms[n]));
    }

    static FormalSeries one(int order)
    {
        FormalSeries s(order);
        s.terms_[0] = ExactPoly::constant(1);
        return s;
    }

    int order() const noexcept
    {
        return static_cast<int>(terms_.size()) - 1;
    }

    const ExactPoly& operator[](int n) const
    {
        return terms_.at(static_cast<std::size_t>(n));
    }

    void set(int n, ExactPoly q)
    {
        if (q.degree() > n)
            throw DomainError("FormalSeries: coefficient of x^-" + std::to_string(n) + " has degree "
                              + std::to_string(q.degree()));
        terms_.at(static_cast<std::size_t>(n)) = std::move(q);
    }

    /// Index of the first nonzero term; order()+1 when the truncation is zero.
    int valuation() const noexcept
    {
        for (std::size_t n = 0; n < terms_.size(); ++n)
            if (!terms_[n].is_zero())
                return static_cast<int>(n);
        return order() + 1;
    }

    /// Same series, truncated or zero-padded to a new order.
    FormalSeries with_order(int order) const
    {
        FormalSeries r(order);
        for (int n = 0; n <= std::min(order, this->order()); ++n)
            r.terms_[n] = terms_[n];
        return r;
    }

    FormalSeries& operator+=(const FormalSeries& o)
    {
        require_same_order(o);
        for (std::size_t n = 0; n < terms_.size(); ++n)
            terms_[n] += o.terms_[n];
        return *this;
    }

    FormalSeries& operator-=(const FormalSeries& o)
    {
        require_same_order(o);
        for (std::size_t n = 0; n < terms_.size(); ++n)
            terms_[n] -= o.terms_[n];
        return *this;
    }

    FormalSeries& operator*=(const BigRational& s)
    {
        for (auto& t : terms_)
            t *= s;
        return *this;
    }

    friend FormalSeries operator+(FormalSeries a, const FormalSeries& b)
    {
        return a += b;
    }

    friend FormalSeries operator-(FormalSeries a, const FormalSeries& b)
    {
        return a -= b;
    }

    friend FormalSeries operator*(FormalSeries a, const BigRational& s)
    {
        return a *= s;
    }

    friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b)
    {
        a.require_same_order(b);
        const int order = a.order();
        const int va = a.valuation(), vb = b.valuation();
        FormalSeries r(order);
        for (int n = va + vb; n <= order; ++n)
        {
            ExactPoly acc;
            for (int i = va; i <= n - vb; ++i)
            {
                const ExactPoly& p = a.terms_[i];
                const ExactPoly& q = b.terms_[n - i];
                if (p.is_zero() || q.is_zero())
                    continue;
                acc.add_product(p, q);
            }
            acc.normalize();
            r.terms_[n] = std::move(acc);
        }
        return r;
    }

    /// Multiplication by 1/x.
    FormalSeries shifted() const
    {
        FormalSeries r(order());
        for (int n = order(); n >= 1; --n)
            r.terms_[n] = terms_[n - 1];
        return r;
    }

    /// d/dx:  q_n / x^n  ->  -n q_n / x^{n+1}
    FormalSeries derivative_x() const
    {
        FormalSeries r(order());
        for (int n = 1; n < order(); ++n)
            r.terms_[n + 1] = terms_[n] * BigRational(-n);
        return r;
    }

    /// d/dy, termwise.
    FormalSeries derivative_y() const
    {
        FormalSeries r(order());
        for (int n = 1; n <= order(); ++n)
            r.terms_[n] = terms_[n].derivative();
        return r;
    }

    /// log(1+u) = sum_{k>=1} (-1)^{k+1} u^k / k for a unit with constant term 1.
    /// The sum is finite modulo the truncation since u^k starts at x^{-k}.
    FormalSeries log() const
    {
        if (!(terms_[0] == ExactPoly::constant(1)))
            throw DomainError("FormalSeries::log: constant term must be 1");
        FormalSeries u = *this;
        u.terms_[0] = ExactPoly();
        FormalSeries result = u;
        FormalSeries power = u;
        for (int k = 2; k <= order(); ++k)
        {
            power = power * u;
            if (power.valuation() > order())
                break;
            result += power * BigRational((k % 2 == 0) ? -1 : 1, k);
        }
        return result;
    }

    /// exp(u) = sum_k u^k / k! for u with zero constant term.
    FormalSeries exp() const
    {
        if (!terms_[0].is_zero())
            throw DomainError("FormalSeries::exp: constant term must be 0");
        FormalSeries result = one(order());
        FormalSeries power = one(order());
        BigInt fact = 1;
        for (int k = 1; k <= order(); ++k)
        {
            power = power * *this;
            if (power.valuation() > order())
                break;
            fact *= k;
            result += power * BigRational(1, fact);
        }
        return result;
    }

    friend bool operator==(const FormalSeries& a, const FormalSeries& b)
    {
        return a.terms_ == b.terms_;
    }

private:
    static int check_order(int order)
    {
        if (order < 0)
            throw DomainError("FormalSeries: negative truncation order");
        return order;
    }

    void require_same_order(const FormalSeries& o) const
    {
        if (o.order() != order())
            throw DomainError("FormalSeries: truncation orders differ");
    }

    std::vector<ExactPoly> terms_;
};
} // namespace cipolla

#endif // CIPOLLA_FORMAL_SERIES_HPP_INCLUDED
