#ifndef CIPOLLA_PRIMES_HPP_INCLUDED
#define CIPOLLA_PRIMES_HPP_INCLUDED

#include <cipolla/big_real.hpp>
#include <cipolla/errors.hpp>
#include <cipolla/expansion.hpp>
#include <cipolla/numerics.hpp>
#include <cipolla/polyengine.hpp>
#include <cipolla/sturm.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

namespace cipolla
{
inline constexpr std::uint64_t kDefaultSieveCap = 1'000'000'000ULL;

/// Odd-only bit sieve over [0, limit] with per-word prefix counts.
/// Immutable after construction.
class PrimeTable
{
public:
    static constexpr std::uint64_t kDefaultSegment = 1ULL << 21; // odd numbers per segment

    explicit PrimeTable(std::uint64_t limit, std::uint64_t cap = kDefaultSieveCap,
                        std::uint64_t segment = kDefaultSegment)
    : limit_(std::max<std::uint64_t>(limit, 2)), segment_(std::max<std::uint64_t>(segment, 64))
    {
        if (limit_ > cap)
            throw OutOfRange("PrimeTable: limit " + std::to_string(limit_) + " exceeds sieve cap "
                             + std::to_string(cap));
        build();
    }

    std::uint64_t limit() const noexcept
    {
        return limit_;
    }

    /// pi(limit)
    std::uint64_t count() const noexcept
    {
        return total_;
    }

    bool is_prime(std::uint64_t n) const
    {
        check(n);
        if (n < 2)
            return false;
        if (n == 2)
            return true;
        if (n % 2 == 0)
            return false;
        const std::uint64_t i = n / 2;
        return (bits_[i / 64] >> (i % 64)) & 1U;
    }

    /// pi(x) for x <= limit.
    std::uint64_t pi(std::uint64_t x) const
    {
        check(x);
        if (x < 2)
            return 0;
        // odd index i represents 2i+1; count odd primes <= x, plus 2.
        const std::uint64_t i = (x - 1) / 2; // largest odd <= x is 2i+1
        const std::uint64_t w = i / 64;
        const std::uint64_t mask = (i % 64 == 63) ? ~0ULL : ((1ULL << (i % 64 + 1)) - 1);
        return 1 + prefix_[w] + static_cast<std::uint64_t>(std::popcount(bits_[w] & mask));
    }

    /// n-th prime, 1-based.
    std::uint64_t nth(std::uint64_t n) const
    {
        if (n == 0)
            throw DomainError("nth_prime: n must be >= 1");
        if (n > total_)
            throw OutOfRange("nth_prime: p_" + std::to_string(n) + " exceeds sieve limit " + std::to_string(limit_));
        if (n == 1)
            return 2;
        const std::uint64_t k = n - 1; // rank among odd primes, 1-based
        // Last word whose prefix count is < k.
        auto it = std::lower_bound(prefix_.begin(), prefix_.end(), k);
        std::size_t w = static_cast<std::size_t>(it - prefix_.begin()) - 1;
        std::uint64_t need = k - prefix_[w];
        std::uint64_t word = bits_[w];
        for (std::uint64_t seen = 0;; word &= word - 1)
        {
            if (++seen == need)
                return 2 * (w * 64 + static_cast<std::uint64_t>(std::countr_zero(word))) + 1;
        }
    }

    /// All primes <= limit, ascending.
    std::vector<std::uint64_t> primes() const
    {
        std::vector<std::uint64_t> out;
        out.reserve(total_);
        out.push_back(2);
        for (std::size_t w = 0; w < bits_.size(); ++w)
            for (std::uint64_t word = bits_[w]; word; word &= word - 1)
                out.push_back(2 * (w * 64 + static_cast<std::uint64_t>(std::countr_zero(word))) + 1);
        return out;
    }

private:
    void check(std::uint64_t x) const
    {
        if (x > limit_)
            throw OutOfRange("PrimeTable: " + std::to_string(x) + " beyond sieve limit " + std::to_string(limit_));
    }

    void build()
    {
        const std::uint64_t odd_count = limit_ / 2 + 1; // indices 0..limit/2 -> 1,3,5,...
        bits_.assign((odd_count + 63) / 64, ~0ULL);
        // Clear index 0 (the number 1) and anything past the limit.
        bits_[0] &= ~1ULL;
        for (std::uint64_t i = odd_count; i < bits_.size() * 64; ++i)
            bits_[i / 64] &= ~(1ULL << (i % 64));
        std::uint64_t top = (limit_ % 2 == 0) ? limit_ - 1 : limit_;
        if (2 * (odd_count - 1) + 1 > top)
        {
            std::uint64_t i = odd_count - 1;
            bits_[i / 64] &= ~(1ULL << (i % 64));
        }

        // Base primes up to sqrt(limit) by a plain sieve.
        const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(limit_))) + 1;
        std::vector<char> small(root + 1, 1);
        std::vector<std::uint64_t> base;
        for (std::uint64_t i = 3; i <= root; i += 2)
        {
            if (!small[i])
                continue;
            base.push_back(i);
            for (std::uint64_t j = i * i; j <= root; j += 2 * i)
                small[j] = 0;
        }

        // Segmented crossing-off over odd indices.
        for (std::uint64_t lo = 0; lo < odd_count; lo += segment_)
        {
            const std::uint64_t hi = std::min(lo + segment_, odd_count); // index range [lo, hi)
            const std::uint64_t hi_value = 2 * (hi - 1) + 1;
            for (std::uint64_t p : base)
            {
                if (p * p > hi_value)
                    break;
                // first odd multiple of p >= max(p*p, 2*lo+1)
                std::uint64_t start = std::max(p * p, ((2 * lo + 1 + p - 1) / p) * p);
                if (start % 2 == 0)
                    start += p;
                for (std::uint64_t m = start; m <= hi_value; m += 2 * p)
                {
                    const std::uint64_t i = m / 2;
                    bits_[i / 64] &= ~(1ULL << (i % 64));
                }
            }
        }

        prefix_.resize(bits_.size());
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < bits_.size(); ++w)
        {
            prefix_[w] = acc;
            acc += static_cast<std::uint64_t>(std::popcount(bits_[w]));
        }
        total_ = acc + 1;
    }

    std::uint64_t limit_;
    std::uint64_t segment_;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint64_t> prefix_; // odd primes in words before w
    std::uint64_t total_ = 0;
};

/// Upper bound for p_n (n >= 6: n(log n + log log n)), used to size sieves.
inline std::uint64_t nth_prime_upper_bound(std::uint64_t n)
{
    if (n < 6)
        return 13;
    const double ln = std::log(static_cast<double>(n));
    return static_cast<std::uint64_t>(static_cast<double>(n) * (ln + std::log(ln))) + 16;
}

/// Shared sieve covering at least `limit`; rebuilt larger on demand.
inline std::shared_ptr<const PrimeTable> shared_prime_table(std::uint64_t limit, std::uint64_t cap = kDefaultSieveCap)
{
    static std::mutex mutex;
    static std::shared_ptr<const PrimeTable> table;
    std::lock_guard<std::mutex> lock(mutex);
    if (!table || table->limit() < limit)
    {
        if (limit > cap)
            throw OutOfRange("sieve limit " + std::to_string(limit) + " exceeds cap " + std::to_string(cap));
        std::uint64_t size = std::max(limit, table ? std::min(cap, 2 * table->limit()) : std::uint64_t{1} << 20);
        table = std::make_shared<const PrimeTable>(size, cap);
    }
    return table;
}

inline std::uint64_t nth_prime(std::uint64_t n, std::uint64_t cap = kDefaultSieveCap)
{
    if (n == 0)
        throw DomainError("nth_prime: n must be >= 1");
    const std::uint64_t bound = nth_prime_upper_bound(n);
    if (bound > cap)
        throw OutOfRange("nth_prime: p_" + std::to_string(n) + " may exceed sieve cap " + std::to_string(cap));
    return shared_prime_table(bound, cap)->nth(n);
}

/// s_N(n) = n log n (1 + sum_{k=1}^N P_{k-1}(log log n)/log^k n).
inline BigReal s_N(const BigReal& n, int N, int digits)
{
    require_digits(digits);
    if (N < 0)
        throw DomainError("s_N: N must be >= 0");
    const Precision p = Precision::digits(digits + 10);
    const BigReal nn = n.at(p);
    if (nn < 2L)
        throw DomainError("s_N: n must be >= 2");
    const BigReal x = log(nn);
    BigReal bracket = N == 0 ? BigReal(1L, p) : expansion_bracket(x, N, digits + 5).at(p);
    return (nn * x * bracket).at(Precision::digits(digits));
}

namespace detail
{
/// Splits [lo, hi] into `jobs` contiguous chunks, runs fn(chunk_lo, chunk_hi,
/// out) on each, and concatenates the per-chunk outputs in order.
template <class T, class Fn>
std::vector<T> parallel_chunks(std::uint64_t lo, std::uint64_t hi, int jobs, Fn fn)
{
    if (hi < lo)
        return {};
    jobs = std::max(1, jobs);
    const std::uint64_t span = hi - lo + 1;
    const std::uint64_t chunks = std::min<std::uint64_t>(static_cast<std::uint64_t>(jobs), span);
    std::vector<std::vector<T>> parts(chunks);
    std::vector<std::thread> threads;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (std::uint64_t c = 0; c < chunks; ++c)
    {
        const std::uint64_t a = lo + span * c / chunks;
        const std::uint64_t b = lo + span * (c + 1) / chunks - 1;
        auto task = [&, a, b, c] {
            try
            {
                fn(a, b, parts[c]);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        };
        if (chunks == 1)
            task();
        else
            threads.emplace_back(task);
    }
    for (auto& t : threads)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
    std::vector<T> out;
    for (auto& part : parts)
        out.insert(out.end(), part.begin(), part.end());
    return out;
}

inline constexpr long double kInvPi = 0.318309886183790671537767526745028724L;

/// Margin below which a long-double comparison is re-done in BigReal.
inline bool tight(long double lhs, long double rhs)
{
    return std::fabs(lhs - rhs) <= 1e-9L * (std::fabs(lhs) + std::fabs(rhs) + 1.0L);
}
} // namespace detail

struct SweepReport
{
    std::string check;
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint64_t checked = 0;
    std::uint64_t escalated = 0; // comparisons redone in arbitrary precision
    std::vector<std::uint64_t> violations;
    bool ok() const
    {
        return violations.empty();
    }
};

/// |p_n - ali(n)| < (1/pi) sqrt(n) log^{5/2} n over [n_lo, n_hi].
inline SweepReport check_tdistance(std::uint64_t n_lo, std::uint64_t n_hi, int digits = 30, int jobs = 1,
                                   std::uint64_t cap = kDefaultSieveCap)
{
    if (n_lo < 1 || n_hi < n_lo)
        throw DomainError("check_tdistance: need 1 <= n_lo <= n_hi");
    const std::uint64_t bound = nth_prime_upper_bound(n_hi);
    if (bound > cap)
        throw OutOfRange("check_tdistance: range exceeds sieve cap");
    auto table = shared_prime_table(bound, cap);
    const std::vector<std::uint64_t> primes = table->primes();
    SweepReport rep{"tdistance", n_lo, n_hi, n_hi - n_lo + 1, 0, {}};
    std::mutex esc_mutex;
    rep.violations = detail::parallel_chunks<std::uint64_t>(
        n_lo, n_hi, jobs, [&](std::uint64_t a, std::uint64_t b, std::vector<std::uint64_t>& out) {
            std::uint64_t esc = 0;
            for (std::uint64_t n = a; n <= b; ++n)
            {
                const auto pn = static_cast<long double>(primes[n - 1]);
                const long double ln = std::log(static_cast<long double>(n));
                const long double rhs = detail::kInvPi * std::sqrt(static_cast<long double>(n)) * std::pow(ln, 2.5L);
                const long double lhs = std::fabs(pn - ali_fast(static_cast<long double>(n)));
                bool holds = lhs < rhs;
                if (detail::tight(lhs, rhs))
                {
                    ++esc;
                    const Precision p = Precision::digits(digits + 10);
                    const BigReal N(static_cast<long>(n), p);
                    const BigReal l = abs(BigReal(static_cast<long>(primes[n - 1]), p) - ali(N, digits + 10));
                    const BigReal L = log(N);
                    const BigReal r = sqrt(N) * pow(L, BigReal(2.5, p)) / pi(p);
                    holds = l < r;
                }
                if (!holds)
                    out.push_back(n);
            }
            std::lock_guard<std::mutex> lock(esc_mutex);
            rep.escalated += esc;
        });
    return rep;
}

struct ClassicalReport
{
    std::uint64_t n_hi = 0;
    std::uint64_t upper_from = 688383;
    SweepReport lower_nlogn;
    SweepReport lower_second;
    SweepReport upper;
    bool ok() const
    {
        return lower_nlogn.ok() && lower_second.ok() && upper.ok();
    }
};

/// p_n >= n log n, p_n >= n(log n + loglog n - 1) for 2 <= n <= n_hi, and
/// p_n <= n(log n + loglog n - 1 + (loglog n - 2)/log n) for 688383 <= n <= n_hi.
inline ClassicalReport check_classical(std::uint64_t n_hi, int jobs = 1, std::uint64_t cap = kDefaultSieveCap)
{
    if (n_hi < 2)
        throw DomainError("check_classical: n_hi must be >= 2");
    const std::uint64_t bound = nth_prime_upper_bound(n_hi);
    if (bound > cap)
        throw OutOfRange("check_classical: range exceeds sieve cap");
    auto table = shared_prime_table(bound, cap);
    const std::vector<std::uint64_t> primes = table->primes();
    ClassicalReport rep;
    rep.n_hi = n_hi;

    // which: 0 = n log n, 1 = second lower bound, 2 = upper bound.
    auto exact = [&](std::uint64_t n, int which) {
        const Precision p = Precision::digits(40);
        const BigReal N(static_cast<long>(n), p);
        const BigReal P(static_cast<long>(primes[n - 1]), p);
        const BigReal L = log(N), LL = log(L);
        if (which == 0)
            return P >= N * L;
        if (which == 1)
            return P >= N * (L + LL - 1L);
        return P <= N * (L + LL - 1L + (LL - 2L) / L);
    };
    auto sweep = [&](const char* name, std::uint64_t lo, std::uint64_t hi, int which) {
        SweepReport r{name, lo, hi, hi >= lo ? hi - lo + 1 : 0, 0, {}};
        if (hi < lo)
        {
            r.checked = 0;
            return r;
        }
        std::mutex m;
        r.violations = detail::parallel_chunks<std::uint64_t>(
            lo, hi, jobs, [&](std::uint64_t a, std::uint64_t b, std::vector<std::uint64_t>& out) {
                std::uint64_t esc = 0;
                for (std::uint64_t n = a; n <= b; ++n)
                {
                    const auto N = static_cast<long double>(n);
                    const auto P = static_cast<long double>(primes[n - 1]);
                    const long double L = std::log(N), LL = std::log(L);
                    long double rhs = which == 0   ? N * L
                                      : which == 1 ? N * (L + LL - 1)
                                                   : N * (L + LL - 1 + (LL - 2) / L);
                    bool holds = which == 2 ? P <= rhs : P >= rhs;
                    if (detail::tight(P, rhs))
                    {
                        ++esc;
                        holds = exact(n, which);
                    }
                    if (!holds)
                        out.push_back(n);
                }
                std::lock_guard<std::mutex> lock(m);
                r.escalated += esc;
            });
        return r;
    };
    rep.lower_nlogn = sweep("classical-lower-nlogn", 2, n_hi, 0);
    rep.lower_second = sweep("classical-lower-loglog", 2, n_hi, 1);
    rep.upper = sweep("classical-upper", rep.upper_from, n_hi, 2);
    return rep;
}

/// |pi(x) - li(x)| < (1/(8 pi)) sqrt(x) log x for 2657 < x <= x_hi, checked
/// where the difference is extremal: at each prime p (pi(p)) and just
/// before it (pi(p) - 1, li continuous), plus the two interval ends.
inline SweepReport check_schoenfeld(std::uint64_t x_hi, int jobs = 1, std::uint64_t cap = kDefaultSieveCap)
{
    constexpr std::uint64_t start = 2657;
    if (x_hi <= start)
        throw DomainError("check_schoenfeld: x_hi must exceed 2657");
    if (x_hi > cap)
        throw OutOfRange("check_schoenfeld: x_hi exceeds sieve cap");
    auto table = shared_prime_table(x_hi, cap);
    SweepReport rep{"schoenfeld", start + 1, x_hi, 0, 0, {}};

    auto holds_at = [&](long double x, long double pix, std::uint64_t& esc) {
        const long double l = li_fast(x);
        const long double lhs = std::fabs(pix - l);
        const long double rhs = std::sqrt(x) * std::log(x) / (8.0L / detail::kInvPi);
        if (!detail::tight(lhs, rhs))
            return lhs < rhs;
        ++esc;
        const Precision p = Precision::digits(40);
        const BigReal X(static_cast<double>(x), p);
        const BigReal L = abs(BigReal(static_cast<double>(pix), p) - li(X, 30));
        return L < sqrt(X) * log(X) / (8L * pi(p));
    };

    const std::vector<std::uint64_t> all = table->primes();
    auto first = std::upper_bound(all.begin(), all.end(), start);
    auto last = std::upper_bound(all.begin(), all.end(), x_hi);
    const std::uint64_t lo_idx = static_cast<std::uint64_t>(first - all.begin());
    const std::uint64_t hi_idx = static_cast<std::uint64_t>(last - all.begin());
    std::mutex m;
    std::uint64_t checked = 0;
    if (hi_idx > lo_idx)
    {
        rep.violations = detail::parallel_chunks<std::uint64_t>(
            lo_idx, hi_idx - 1, jobs, [&](std::uint64_t a, std::uint64_t b, std::vector<std::uint64_t>& out) {
                std::uint64_t esc = 0, local = 0;
                for (std::uint64_t i = a; i <= b; ++i)
                {
                    const std::uint64_t prime = all[i];
                    const auto pix = static_cast<long double>(i + 1); // pi(prime)
                    const auto x = static_cast<long double>(prime);
                    local += 2;
                    if (!holds_at(x, pix, esc) || !holds_at(x, pix - 1, esc))
                        out.push_back(prime);
                }
                std::lock_guard<std::mutex> lock(m);
                rep.escalated += esc;
                checked += local;
            });
    }
    // Interval ends: just above 2657 and at x_hi.
    std::uint64_t esc = 0;
    if (!holds_at(static_cast<long double>(start), static_cast<long double>(table->pi(start)), esc))
        rep.violations.insert(rep.violations.begin(), start + 1);
    if (!holds_at(static_cast<long double>(x_hi), static_cast<long double>(table->pi(x_hi)), esc))
        if (rep.violations.empty() || rep.violations.back() != x_hi)
            rep.violations.push_back(x_hi);
    rep.escalated += esc;
    rep.checked = checked + 2;
    return rep;
}

/// Real roots of P_n isolated by Sturm counting on the exact polynomial and
/// refined by bisection.
inline std::vector<IsolatedRoot> real_roots(int n, int digits)
{
    if (n < 1)
        throw DomainError("real_roots: n must be >= 1");
    return isolate_real_roots(poly_P(n), digits);
}

struct R3Report
{
    int digits = 0;
    BigReal y0_lo{Precision::digits(10)};
    BigReal y0_hi{Precision::digits(10)};
    BigReal y0{Precision::digits(10)};
    BigReal n_threshold{Precision::digits(10)}; // exp(exp(y0))
    BigReal n{Precision::digits(10)};           // 39e29
    BigReal s3{Precision::digits(10)};
    BigReal ali_n{Precision::digits(10)};
    BigReal tdistance_radius{Precision::digits(10)};
    BigReal upper{Precision::digits(10)};       // ali(n) + radius
    bool upper_below_s3 = false;
};

/// Left minus right side of the crossing inequality in y = log log n with
/// the order-10 concrete coefficient:
///   P_3(y) + sum_{k=5}^{10} P_{k-1}(y) e^{-(k-4)y}
///     - c y^10 e^{-7y} - (1/pi) e^{11y/2} e^{-e^y/2}
inline BigReal r3_crossing(const BigReal& y, const PolynomialTable& table)
{
    const Precision p = y.precision();
    constexpr int N = 10;
    auto evalP = [&](int k) {
        const ExactPoly& P = table.P(k);
        BigReal acc(p);
        const auto& c = P.scaled_coeffs();
        for (auto it = c.rbegin(); it != c.rend(); ++it)
        {
            acc *= y;
            acc += *it;
        }
        return acc / P.denom();
    };
    BigReal lhs = evalP(3);
    for (int k = 5; k <= N; ++k)
        lhs += evalP(k - 1) * exp(-(y * static_cast<long>(k - 4)));
    BigReal rhs = concrete_coefficient(N, p) * pow(y, static_cast<long>(N)) * exp(-(y * static_cast<long>(N - 3)));
    rhs += exp(y * 5.5 - exp(y) / 2L) / pi(p);
    return lhs - rhs;
}

inline R3Report r3_window(int digits)
{
    require_digits(digits, 45);
    const Precision p = Precision::digits(digits + 15);
    R3Report rep;
    rep.digits = digits;
    auto table = shared_polynomials(10);

    BigReal lo(4L, p), hi(5L, p);
    if (!(r3_crossing(lo, *table).sign() < 0 && r3_crossing(hi, *table).sign() > 0))
        throw InternalInconsistency("r3_window: crossing not bracketed by [4, 5]");
    auto [a, b] = detail::bisect([&](const BigReal& y) { return r3_crossing(y, *table).sign() > 0; }, lo, hi,
                                 digits + 5);
    rep.y0_lo = a;
    rep.y0_hi = b;
    rep.y0 = (a + b) / 2L;
    rep.n_threshold = exp(exp(rep.y0));

    rep.n = BigReal::parse("39e29", p);
    rep.s3 = s_N(rep.n, 3, digits + 10).at(p);
    rep.ali_n = ali(rep.n, digits + 10).at(p);
    const BigReal L = log(rep.n);
    rep.tdistance_radius = sqrt(rep.n) * pow(L, BigReal(2.5, p)) / pi(p);
    rep.upper = rep.ali_n + rep.tdistance_radius;
    rep.upper_below_s3 = rep.upper < rep.s3;
    return rep;
}
} // namespace cipolla

#endif // CIPOLLA_PRIMES_HPP_INCLUDED
