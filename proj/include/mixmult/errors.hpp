#pragma once

#include <stdexcept>
#include <string>

namespace mixmult
{

// Base of every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad shapes, empty generator sets, unknown names.
class InputError : public Error
{
public:
    using Error::Error;
};

class DimensionMismatch : public InputError
{
public:
    using InputError::InputError;
};

// An operation that needs finite colength got an ideal without a pure power on some axis.
class NotMPrimary : public InputError
{
public:
    using InputError::InputError;
};

// Finite differences did not settle before the t_start cap.
class NonStabilizing : public Error
{
public:
    using Error::Error;
};

// No rescaling factor passed the horizon check below the cap.
class RescaleNotFound : public Error
{
public:
    RescaleNotFound(const std::string &what, unsigned best_f, unsigned first_failing_t)
        : Error(what), best_f_(best_f), first_failing_t_(first_failing_t)
    {
    }
    unsigned best_candidate() const noexcept { return best_f_; }
    unsigned first_failing_t() const noexcept { return first_failing_t_; }

private:
    unsigned best_f_;
    unsigned first_failing_t_;
};

// Broken internal consistency (e.g. a non-homogeneous interpolant). Indicates a bug.
class InternalError : public Error
{
public:
    using Error::Error;
};

// A monotonicity or theorem check failed on computed data.
class VerificationFailure : public Error
{
public:
    using Error::Error;
};

// zero_propagation_check: the final level is not below the tolerance.
class ToleranceNotMet : public Error
{
public:
    using Error::Error;
};

} // namespace mixmult
