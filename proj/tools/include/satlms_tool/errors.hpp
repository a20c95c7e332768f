#pragma once

#include <string>

#include "satlms/errors.hpp"

namespace satlms_tool {

/// Config file is missing, malformed, or contains an unknown / mistyped key.
class ConfigParse : public satlms::Error {
public:
    explicit ConfigParse(const std::string& what) : Error("config: " + what) {}
};

/// Impulse-response file or generator directive could not be loaded.
class ImpulseResponseLoad : public satlms::Error {
public:
    explicit ImpulseResponseLoad(const std::string& what)
        : Error("impulse response: " + what) {}
};

/// Output (or other) file could not be opened or written.
class IoError : public satlms::Error {
public:
    explicit IoError(const std::string& what) : Error("io: " + what) {}
};

} // namespace satlms_tool
