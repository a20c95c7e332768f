#pragma once

#include <cstddef>
#include <vector>

namespace satlms {

/// Unknown-system coefficient vector g0, zero-padded to the adaptive filter's
/// tap count and rescaled so that (1/N) ||g||^2 equals the requested power.
struct ImpulseResponse {
    std::vector<double> coeffs;   // length padded_len; entries past original_len are 0
    std::size_t padded_len = 0;   // N
    std::size_t original_len = 0; // M <= N
    double target_sigma_g2 = 1.0;

    /// Actual normalized power (1/N) sum g_i^2 of the stored coefficients.
    double sigma_g2() const;
};

/// Scale and zero-pad a raw response so (1/N) ||g||^2 = target_sigma_g2
/// (relative error below 1e-12). The scale factor is positive, so the shape
/// of the response is preserved. Throws AllZeroResponse when `raw` is empty
/// or has no nonzero entry, LengthExceedsTaps when raw.size() > taps, and
/// InvalidParameter on nonpositive target power.
ImpulseResponse normalize_impulse_response(const std::vector<double>& raw,
                                           std::size_t taps,
                                           double target_sigma_g2);

} // namespace satlms
