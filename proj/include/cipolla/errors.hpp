#ifndef CIPOLLA_ERRORS_HPP_INCLUDED
#define CIPOLLA_ERRORS_HPP_INCLUDED

#include <stdexcept>

namespace cipolla
{
/// Argument outside the mathematical domain of an operation (li at x <= 1, s_N at n < 2, ...).
struct DomainError : std::domain_error
{
    using std::domain_error::domain_error;
};

/// Requested digits exceed the configured precision ceiling.
struct PrecisionExhausted : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct NoConvergence : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// Query beyond the sieve limit.
struct OutOfRange : std::out_of_range
{
    using std::out_of_range::out_of_range;
};

/// An exact division that must be exact was not. Always an implementation bug.
struct InternalInconsistency : std::logic_error
{
    using std::logic_error::logic_error;
};

struct QuadratureFailure : std::runtime_error
{
    using std::runtime_error::runtime_error;
};
} // namespace cipolla

#endif // CIPOLLA_ERRORS_HPP_INCLUDED
