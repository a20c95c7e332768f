#include "satlms_tool/impulse_io.hpp"

#include <charconv>
#include <fstream>

#include "satlms/config.hpp"
#include "satlms/errors.hpp"
#include "satlms/rng.hpp"
#include "satlms_tool/errors.hpp"

namespace satlms_tool {

namespace {

/// Salt for the response generator stream; distinct from the input (1) and
/// noise (2) salts used inside the simulator, so a generated response can
/// never alias a trial's draws.
constexpr std::uint64_t kResponseSalt = 3;

std::vector<double> generate_random(const std::string& directive) {
    // random:<seed>:<M>
    const auto first = directive.find(':');
    const auto second = directive.find(':', first + 1);
    if (second == std::string::npos)
        throw ImpulseResponseLoad("directive '" + directive +
                                  "' must look like random:<seed>:<M>");
    const std::string seed_text = directive.substr(first + 1, second - first - 1);
    const std::string len_text = directive.substr(second + 1);
    std::uint64_t seed = 0;
    std::size_t len = 0;
    auto r1 = std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), seed);
    auto r2 = std::from_chars(len_text.data(), len_text.data() + len_text.size(), len);
    if (r1.ec != std::errc{} || r1.ptr != seed_text.data() + seed_text.size() ||
        r2.ec != std::errc{} || r2.ptr != len_text.data() + len_text.size() || len == 0)
        throw ImpulseResponseLoad("directive '" + directive +
                                  "' must look like random:<seed>:<M> with M >= 1");
    satlms::DistSampler sampler(satlms::Dist::Gaussian, 1.0, seed, 0, kResponseSalt);
    std::vector<double> raw(len);
    for (double& v : raw) v = sampler.draw();
    return raw;
}

std::vector<double> read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ImpulseResponseLoad("cannot open '" + path + "'");
    std::vector<double> raw;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos || line[begin] == '#') continue;
        std::size_t end = line.find_last_not_of(" \t\r") + 1;
        double v = 0.0;
        auto res = std::from_chars(line.data() + begin, line.data() + end, v);
        if (res.ec != std::errc{} || res.ptr != line.data() + end)
            throw ImpulseResponseLoad("'" + path + "' line " + std::to_string(lineno) +
                                      " is not a real number");
        raw.push_back(v);
    }
    if (raw.empty()) throw ImpulseResponseLoad("'" + path + "' holds no coefficients");
    return raw;
}

} // namespace

std::vector<double> load_raw_response(const std::string& source) {
    if (source.rfind("random:", 0) == 0) return generate_random(source);
    return read_file(source);
}

satlms::ImpulseResponse resolve_response(const std::string& source,
                                         std::size_t taps, double sigma_g2) {
    const std::vector<double> raw = load_raw_response(source);
    try {
        return satlms::normalize_impulse_response(raw, taps, sigma_g2);
    } catch (const satlms::Error& e) {
        throw ImpulseResponseLoad("'" + source + "': " + e.what());
    }
}

} // namespace satlms_tool
