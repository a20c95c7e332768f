#pragma once

#include <stdexcept>
#include <string>

namespace satlms {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A parameter that must be strictly positive is zero or negative.
class NonPositiveParameter : public Error {
public:
    explicit NonPositiveParameter(const std::string& field)
        : Error("parameter '" + field + "' must be > 0"), field_(field) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Nonlinearity threshold below zero.
class NegativeThreshold : public Error {
public:
    NegativeThreshold() : Error("nonlinearity threshold must be >= 0") {}
};

/// Generic invalid argument outside the named-parameter cases.
class InvalidParameter : public Error {
public:
    explicit InvalidParameter(const std::string& what) : Error(what) {}
};

/// Impulse response with no nonzero coefficient cannot be normalized.
class AllZeroResponse : public Error {
public:
    AllZeroResponse() : Error("impulse response is empty or all zeros") {}
};

/// Raw impulse response longer than the filter it must fit into.
class LengthExceedsTaps : public Error {
public:
    LengthExceedsTaps(std::size_t m, std::size_t n)
        : Error("impulse response length " + std::to_string(m) +
                " exceeds tap count " + std::to_string(n)) {}
};

/// Covariance of (x, y) is not positive semidefinite (r^2 > Q sigma_g^2).
class NotPositiveSemidefinite : public Error {
public:
    NotPositiveSemidefinite() : Error("macro state violates r^2 <= Q sigma_g^2") {}
};

/// mu rho^2 = 2 exactly: the closed-form coefficients are undefined there.
class DegenerateStepSize : public Error {
public:
    DegenerateStepSize() : Error("mu rho^2 = 2 exactly; closed form undefined") {}
};

/// Asked for a steady-state quantity of a non-converging configuration.
class Diverges : public Error {
public:
    Diverges() : Error("configuration does not converge (mu rho^2 >= 2)") {}
};

/// Root bracket did not straddle a sign change (should be unreachable).
class BracketFailure : public Error {
public:
    BracketFailure() : Error("root bracket does not straddle a sign change") {}
};

/// Numerical integration produced NaN or Inf.
class NonFiniteState : public Error {
public:
    explicit NonFiniteState(double t)
        : Error("state became non-finite at t = " + std::to_string(t)), t_(t) {}
    double t() const noexcept { return t_; }

private:
    double t_;
};

/// Vector lengths that must agree do not.
class LengthMismatch : public Error {
public:
    LengthMismatch(std::size_t a, std::size_t b)
        : Error("length mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

} // namespace satlms
