#include "satlms/impulse_response.hpp"

#include <cmath>

#include "satlms/errors.hpp"

namespace satlms {

double ImpulseResponse::sigma_g2() const {
    double acc = 0.0;
    for (double c : coeffs) acc += c * c;
    return acc / static_cast<double>(padded_len);
}

ImpulseResponse normalize_impulse_response(const std::vector<double>& raw,
                                           std::size_t taps,
                                           double target_sigma_g2) {
    if (taps < 1) throw NonPositiveParameter("taps");
    if (!(target_sigma_g2 > 0.0) || std::isnan(target_sigma_g2)) {
        throw InvalidParameter("target_sigma_g2 must be > 0");
    }
    if (raw.size() > taps) throw LengthExceedsTaps(raw.size(), taps);

    double energy = 0.0;
    for (double c : raw) {
        if (std::isnan(c) || std::isinf(c)) {
            throw InvalidParameter("impulse response contains a non-finite value");
        }
        energy += c * c;
    }
    if (raw.empty() || energy == 0.0) throw AllZeroResponse();

    double scale = std::sqrt(target_sigma_g2 * static_cast<double>(taps) / energy);

    ImpulseResponse out;
    out.coeffs.assign(taps, 0.0);
    for (std::size_t i = 0; i < raw.size(); ++i) out.coeffs[i] = raw[i] * scale;
    out.padded_len = taps;
    out.original_len = raw.size();
    out.target_sigma_g2 = target_sigma_g2;
    return out;
}

} // namespace satlms
