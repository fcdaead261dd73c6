#ifndef CIPOLLA_EXACT_POLY_HPP_INCLUDED
#define CIPOLLA_EXACT_POLY_HPP_INCLUDED

#include <cipolla/bigint.hpp>
#include <cipolla/errors.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cipolla
{
/// Univariate polynomial in y with exact rational coefficients, stored as an
/// integer vector over one positive common denominator:
///
///     P(y) = (c_0 + c_1 y + ... + c_d y^d) / denom
///
/// Storage is trimmed (no zero above the true degree). The denominator is
/// whatever the producer chose; Cipolla polynomials keep denom = n!.
/// Arithmetic results are returned in reduced form (gcd of all numerators
/// and the denominator is 1).
class ExactPoly
{
public:
    ExactPoly() : denom_(1) {}

    explicit ExactPoly(std::vector<BigInt> scaled, BigInt denom = 1)
    : coeffs_(std::move(scaled)), denom_(std::move(denom))
    {
        if (sgn(denom_) == 0)
            throw DomainError("ExactPoly: zero denominator");
        if (sgn(denom_) < 0)
        {
            denom_ = -denom_;
            for (auto& c : coeffs_)
                c = -c;
        }
        trim();
    }

    static ExactPoly constant(const BigRational& v)
    {
        return ExactPoly({v.get_num()}, v.get_den());
    }

    /// c * y^k
    static ExactPoly monomial(const BigRational& c, std::size_t k)
    {
        std::vector<BigInt> v(k + 1);
        v[k] = c.get_num();
        return ExactPoly(std::move(v), c.get_den());
    }

    /// -1 for the zero polynomial.
    int degree() const noexcept
    {
        return static_cast<int>(coeffs_.size()) - 1;
    }

    bool is_zero() const noexcept
    {
        return coeffs_.empty();
    }

    const std::vector<BigInt>& scaled_coeffs() const noexcept
    {
        return coeffs_;
    }

    const BigInt& denom() const noexcept
    {
        return denom_;
    }

    BigRational coeff(std::size_t k) const
    {
        if (k >= coeffs_.size())
            return 0;
        BigRational q(coeffs_[k], denom_);
        q.canonicalize();
        return q;
    }

    BigRational leading_coeff() const
    {
        return is_zero() ? BigRational(0) : coeff(coeffs_.size() - 1);
    }

    /// Same value with the smallest possible denominator.
    ExactPoly reduced() const
    {
        ExactPoly r = *this;
        r.reduce();
        return r;
    }

    /// Numerators over the requested denominator, if that representation is
    /// exact (denominator * P must have integer coefficients).
    std::optional<std::vector<BigInt>> scaled_to(const BigInt& d) const
    {
        std::vector<BigInt> out(coeffs_.size());
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
        {
            BigInt t = coeffs_[k] * d;
            if (!mpz_divisible_p(t.get_mpz_t(), denom_.get_mpz_t()))
                return std::nullopt;
            mpz_divexact(out[k].get_mpz_t(), t.get_mpz_t(), denom_.get_mpz_t());
        }
        return out;
    }

    /// Re-express over d; throws InternalInconsistency when inexact.
    ExactPoly rescaled(const BigInt& d) const
    {
        auto s = scaled_to(d);
        if (!s)
            throw InternalInconsistency("ExactPoly::rescaled: denominator does not clear coefficients");
        ExactPoly r;
        r.coeffs_ = std::move(*s);
        r.denom_ = d;
        r.trim();
        return r;
    }

    ExactPoly derivative() const
    {
        if (coeffs_.size() <= 1)
            return ExactPoly();
        std::vector<BigInt> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            d[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
        ExactPoly r(std::move(d), denom_);
        r.reduce();
        return r;
    }

    BigRational eval(const BigRational& y) const
    {
        BigRational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * y + BigRational(*it);
        acc /= BigRational(denom_);
        acc.canonicalize();
        return acc;
    }

    ExactPoly operator-() const
    {
        ExactPoly r = *this;
        for (auto& c : r.coeffs_)
            c = -c;
        return r;
    }

    ExactPoly& operator+=(const ExactPoly& o)
    {
        combine(o, 1);
        return *this;
    }

    ExactPoly& operator-=(const ExactPoly& o)
    {
        combine(o, -1);
        return *this;
    }

    ExactPoly& operator*=(const BigRational& s)
    {
        if (sgn(s) == 0)
        {
            coeffs_.clear();
            denom_ = 1;
            return *this;
        }
        for (auto& c : coeffs_)
            c *= s.get_num();
        denom_ *= s.get_den();
        if (sgn(denom_) < 0)
        {
            denom_ = -denom_;
            for (auto& c : coeffs_)
                c = -c;
        }
        reduce();
        return *this;
    }

    friend ExactPoly operator+(ExactPoly a, const ExactPoly& b)
    {
        return a += b;
    }

    friend ExactPoly operator-(ExactPoly a, const ExactPoly& b)
    {
        return a -= b;
    }

    friend ExactPoly operator*(ExactPoly a, const BigRational& s)
    {
        return a *= s;
    }

    friend ExactPoly operator*(const BigRational& s, ExactPoly a)
    {
        return a *= s;
    }

    friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b)
    {
        if (a.is_zero() || b.is_zero())
            return ExactPoly();
        std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        {
            if (sgn(a.coeffs_[i]) == 0)
                continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                mpz_addmul(out[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
        }
        ExactPoly r(std::move(out), a.denom_ * b.denom_);
        r.reduce();
        return r;
    }

    /// this += a * b without normalizing; call normalize() once when done.
    void add_product(const ExactPoly& a, const ExactPoly& b)
    {
        if (a.is_zero() || b.is_zero())
            return;
        const BigInt d = a.denom_ * b.denom_;
        BigInt fa = 1, fb = 1;
        if (d != denom_)
        {
            BigInt l;
            mpz_lcm(l.get_mpz_t(), denom_.get_mpz_t(), d.get_mpz_t());
            fa = l / denom_;
            fb = l / d;
            if (fa != 1)
                for (auto& c : coeffs_)
                    c *= fa;
            denom_ = l;
        }
        const std::size_t size = a.coeffs_.size() + b.coeffs_.size() - 1;
        if (coeffs_.size() < size)
            coeffs_.resize(size);
        BigInt t;
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        {
            if (sgn(a.coeffs_[i]) == 0)
                continue;
            if (fb == 1)
            {
                for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                    mpz_addmul(coeffs_[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
            }
            else
            {
                t = a.coeffs_[i] * fb;
                for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                    mpz_addmul(coeffs_[i + j].get_mpz_t(), t.get_mpz_t(), b.coeffs_[j].get_mpz_t());
            }
        }
    }

    /// Normalize in place after a run of add_product calls.
    void normalize()
    {
        reduce();
    }

    /// Value equality (representations may use different denominators).
    friend bool operator==(const ExactPoly& a, const ExactPoly& b)
    {
        if (a.coeffs_.size() != b.coeffs_.size())
            return false;
        if (a.denom_ == b.denom_)
            return a.coeffs_ == b.coeffs_;
        for (std::size_t k = 0; k < a.coeffs_.size(); ++k)
            if (a.coeffs_[k] * b.denom_ != b.coeffs_[k] * a.denom_)
                return false;
        return true;
    }

    /// "(2y^3 - 21y^2 + 84y - 131)/6" style, reduced, sign pulled out front
    /// when the leading coefficient is negative.
    std::string to_string(char var = 'y') const
    {
        ExactPoly r = reduced();
        if (r.is_zero())
            return "0";
        bool negate = sgn(r.coeffs_.back()) < 0;
        std::string body;
        for (std::size_t i = r.coeffs_.size(); i-- > 0;)
        {
            BigInt c = negate ? BigInt(-r.coeffs_[i]) : r.coeffs_[i];
            if (sgn(c) == 0)
                continue;
            bool first = body.empty();
            if (!first)
                body += sgn(c) < 0 ? " - " : " + ";
            else if (sgn(c) < 0)
                body += "-";
            BigInt m = abs(c);
            if (i == 0 || m != 1)
                body += m.get_str();
            if (i >= 1)
                body += var;
            if (i >= 2)
                body += "^" + std::to_string(i);
        }
        bool has_den = r.denom_ != 1;
        bool multi_term = std::count_if(r.coeffs_.begin(), r.coeffs_.end(),
                                        [](const BigInt& c) { return sgn(c) != 0; }) > 1;
        std::string out;
        if (negate)
            out = (multi_term || has_den) ? "-(" + body + ")" : "-" + body;
        else
            out = (multi_term && has_den) ? "(" + body + ")" : body;
        if (has_den)
            out += "/" + r.denom_.get_str();
        return out;
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && sgn(coeffs_.back()) == 0)
            coeffs_.pop_back();
        if (coeffs_.empty())
            denom_ = 1;
    }

    void reduce()
    {
        trim();
        if (coeffs_.empty() || denom_ == 1)
            return;
        BigInt g = denom_;
        for (const auto& c : coeffs_)
        {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g == 1)
                return;
        }
        for (auto& c : coeffs_)
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(denom_.get_mpz_t(), denom_.get_mpz_t(), g.get_mpz_t());
    }

    void combine(const ExactPoly& o, int sign)
    {
        if (o.is_zero())
            return;
        if (coeffs_.size() < o.coeffs_.size())
            coeffs_.resize(o.coeffs_.size());
        if (denom_ == o.denom_)
        {
            for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
                sign > 0 ? coeffs_[k] += o.coeffs_[k] : coeffs_[k] -= o.coeffs_[k];
        }
        else
        {
            BigInt l;
            mpz_lcm(l.get_mpz_t(), denom_.get_mpz_t(), o.denom_.get_mpz_t());
            BigInt fa = l / denom_, fb = l / o.denom_;
            for (auto& c : coeffs_)
                c *= fa;
            for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
            {
                if (sign > 0)
                    mpz_addmul(coeffs_[k].get_mpz_t(), o.coeffs_[k].get_mpz_t(), fb.get_mpz_t());
                else
                    mpz_submul(coeffs_[k].get_mpz_t(), o.coeffs_[k].get_mpz_t(), fb.get_mpz_t());
            }
            denom_ = l;
        }
        reduce();
    }

    std::vector<BigInt> coeffs_;
    BigInt denom_;
};
} // namespace cipolla

#endif // CIPOLLA_EXACT_POLY_HPP_INCLUDED
