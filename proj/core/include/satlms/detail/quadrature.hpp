#pragma once

#include <vector>

namespace satlms::detail {

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence (nodes accurate to machine precision for n <= 512).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Gauss-Hermite nodes and weights for weight exp(-x^2) on (-inf, inf),
/// using the normalized Hermite recurrence to avoid overflow.
void gauss_hermite(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace satlms::detail
