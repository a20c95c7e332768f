#pragma once

namespace satlms {

/// Error function, own implementation (not the host libm).
///
/// Rational approximations from W. J. Cody, "Rational Chebyshev approximation
/// for the error function", Math. Comp. 23 (1969), as used in the SPECFUN
/// reference implementation. Max absolute error below 1e-15 against the
/// mathematical erf over the whole real line; odd symmetry erf(-x) = -erf(x)
/// is exact because only |x| enters the kernels.
double erf(double x);

/// Complementary error function 1 - erf(x), accurate in the far tail where
/// forming 1 - erf(x) would cancel. erfc(x) underflows to 0 for x > 26.6.
double erfc(double x);

} // namespace satlms
