#pragma once

#include <string>
#include <vector>

#include "satlms/impulse_response.hpp"

namespace satlms_tool {

/// Load a raw (unnormalized) response. `source` is either a path to a text
/// file with one ASCII real per line ('#' comments and blank lines allowed)
/// or a generator directive "random:<seed>:<M>" producing M standard-normal
/// coefficients from a stream derived only from <seed>.
std::vector<double> load_raw_response(const std::string& source);

/// Load and normalize: zero-pad to `taps` and rescale the power to
/// sigma_g2. Wraps the core errors in ImpulseResponseLoad naming the source.
satlms::ImpulseResponse resolve_response(const std::string& source,
                                         std::size_t taps, double sigma_g2);

} // namespace satlms_tool
