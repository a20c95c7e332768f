#include "satlms/config.hpp"

#include <cmath>

#include "satlms/errors.hpp"

namespace satlms {

ValidationReport validate(const ExperimentConfig& config) {
    if (!(config.rho2 > 0.0) || std::isnan(config.rho2)) {
        throw NonPositiveParameter("rho2");
    }
    if (!(config.sigma_g2 > 0.0) || std::isnan(config.sigma_g2)) {
        throw NonPositiveParameter("sigma_g2");
    }
    if (config.sigma_xi2 < 0.0 || std::isnan(config.sigma_xi2)) {
        throw InvalidParameter("sigma_xi2 must be >= 0");
    }
    if (!(config.mu > 0.0) || std::isnan(config.mu)) {
        throw NonPositiveParameter("mu");
    }
    if (config.taps < 1) {
        throw NonPositiveParameter("taps");
    }
    if (config.nonlinearity.threshold < 0.0 || std::isnan(config.nonlinearity.threshold)) {
        throw NegativeThreshold();
    }
    return ValidationReport{config.converges()};
}

} // namespace satlms
