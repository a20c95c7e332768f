#pragma once

namespace satlms {

inline constexpr const char* version = "0.1.0";

} // namespace satlms
