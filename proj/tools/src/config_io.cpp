#include "satlms_tool/config_io.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "satlms_tool/errors.hpp"

namespace satlms_tool {

namespace {

constexpr std::array<const char*, 22> kKnownKeys = {
    "rho2",       "sigma_g2",   "sigma_xi2",        "mu",
    "taps",       "nonlinearity", "input_dist",     "noise_dist",
    "algorithm",  "nlms_mu_tilde", "trials",        "seed",
    "stat",       "record_every", "impulse_response", "t_end",
    "t_step",     "sweep_min",  "sweep_max",        "sweep_points",
    "sweep_window", "moment_nodes"};

constexpr std::array<const char*, 2> kNonlinearityKeys = {"kind", "threshold"};

template <std::size_t N>
bool contains(const std::array<const char*, N>& list, const std::string& key) {
    for (const char* k : list)
        if (key == k) return true;
    return false;
}

void check_keys(const json& c, const std::string& origin) {
    if (!c.is_object()) throw ConfigParse(origin + ": top level must be a JSON object");
    for (const auto& item : c.items()) {
        if (!contains(kKnownKeys, item.key()))
            throw ConfigParse(origin + ": key '" + item.key() + "' is not recognized");
    }
    if (c.contains("nonlinearity")) {
        const json& nl = c.at("nonlinearity");
        if (!nl.is_object())
            throw ConfigParse(origin + ": 'nonlinearity' must be an object");
        for (const auto& item : nl.items()) {
            if (!contains(kNonlinearityKeys, item.key()))
                throw ConfigParse(origin + ": key 'nonlinearity." + item.key() +
                                  "' is not recognized");
        }
    }
}

} // namespace

json parse_config_text(const std::string& text, const std::string& origin) {
    json c;
    try {
        c = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigParse(origin + ": " + e.what());
    }
    check_keys(c, origin);
    return c;
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParse("cannot open '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), path);
}

void apply_overrides(json& config, const std::map<std::string, std::string>& overrides) {
    for (const auto& [key, raw] : overrides) {
        json value;
        try {
            value = json::parse(raw);
            if (!value.is_primitive()) value = raw; // objects/arrays make no sense here
        } catch (const nlohmann::json::exception&) {
            value = raw; // bare words ("dead_zone", "inf") are strings
        }
        auto dot = key.find('.');
        if (dot == std::string::npos) {
            config[key] = value;
        } else {
            config[key.substr(0, dot)][key.substr(dot + 1)] = value;
        }
    }
    check_keys(config, "--set");
}

double num_or(const json& c, const std::string& key, double fallback) {
    if (!c.contains(key)) return fallback;
    const json& v = c.at(key);
    if (!v.is_number()) throw ConfigParse("key '" + key + "' must be a number");
    return v.get<double>();
}

std::uint64_t uint_or(const json& c, const std::string& key, std::uint64_t fallback) {
    if (!c.contains(key)) return fallback;
    const json& v = c.at(key);
    if (!v.is_number_unsigned())
        throw ConfigParse("key '" + key + "' must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

std::string str_or(const json& c, const std::string& key, const std::string& fallback) {
    if (!c.contains(key)) return fallback;
    const json& v = c.at(key);
    if (!v.is_string()) throw ConfigParse("key '" + key + "' must be a string");
    return v.get<std::string>();
}

namespace {

satlms::Nonlinearity nonlinearity_from(const json& c) {
    satlms::Nonlinearity nl; // saturation, threshold 1 unless the config says otherwise
    if (!c.contains("nonlinearity")) return nl;
    const json& j = c.at("nonlinearity");
    const std::string kind = str_or(j, "kind", "saturation");
    if (kind == "saturation") {
        nl.kind = satlms::NonlinKind::Saturation;
    } else if (kind == "dead_zone") {
        nl.kind = satlms::NonlinKind::DeadZone;
    } else {
        throw ConfigParse("nonlinearity.kind '" + kind +
                          "' is not one of saturation, dead_zone");
    }
    if (j.contains("threshold")) {
        const json& th = j.at("threshold");
        if (th.is_string() && th.get<std::string>() == "inf") {
            nl.threshold = std::numeric_limits<double>::infinity();
        } else if (th.is_number()) {
            nl.threshold = th.get<double>();
        } else {
            throw ConfigParse("nonlinearity.threshold must be a number or \"inf\"");
        }
    }
    return nl;
}

satlms::Dist dist_from(const json& c, const std::string& key) {
    const std::string name = str_or(c, key, "gaussian");
    if (name == "gaussian") return satlms::Dist::Gaussian;
    if (name == "uniform") return satlms::Dist::Uniform;
    if (name == "rademacher") return satlms::Dist::Rademacher;
    throw ConfigParse("key '" + key + "' value '" + name +
                      "' is not one of gaussian, uniform, rademacher");
}

} // namespace

satlms::ExperimentConfig experiment_from(const json& c) {
    satlms::ExperimentConfig cfg;
    cfg.rho2 = num_or(c, "rho2", cfg.rho2);
    cfg.sigma_g2 = num_or(c, "sigma_g2", cfg.sigma_g2);
    cfg.sigma_xi2 = num_or(c, "sigma_xi2", cfg.sigma_xi2);
    cfg.mu = num_or(c, "mu", cfg.mu);
    cfg.taps = static_cast<std::size_t>(uint_or(c, "taps", cfg.taps));
    cfg.nonlinearity = nonlinearity_from(c);
    cfg.input_dist = dist_from(c, "input_dist");
    cfg.noise_dist = dist_from(c, "noise_dist");
    satlms::validate(cfg); // throws on hard errors; divergence is only a flag
    return cfg;
}

satlms::sim::Algorithm algorithm_from(const json& c) {
    const std::string name = str_or(c, "algorithm", "lms");
    if (name == "lms") return satlms::sim::Algorithm::LMS;
    if (name == "nlms") return satlms::sim::Algorithm::NLMS;
    throw ConfigParse("key 'algorithm' value '" + name + "' is not one of lms, nlms");
}

satlms::sim::Stat stat_from(const json& c) {
    const std::string name = str_or(c, "stat", "mean");
    if (name == "mean") return satlms::sim::Stat::Mean;
    if (name == "median") return satlms::sim::Stat::Median;
    throw ConfigParse("key 'stat' value '" + name + "' is not one of mean, median");
}

std::string kind_name(satlms::NonlinKind k) {
    return k == satlms::NonlinKind::Saturation ? "saturation" : "dead_zone";
}

std::string dist_name(satlms::Dist d) {
    switch (d) {
        case satlms::Dist::Gaussian: return "gaussian";
        case satlms::Dist::Uniform: return "uniform";
        default: return "rademacher";
    }
}

json nonlinearity_echo(const satlms::Nonlinearity& nl) {
    json j;
    j["kind"] = kind_name(nl.kind);
    if (std::isinf(nl.threshold))
        j["threshold"] = "inf";
    else
        j["threshold"] = nl.threshold;
    return j;
}

json experiment_echo(const satlms::ExperimentConfig& c) {
    json j;
    j["rho2"] = c.rho2;
    j["sigma_g2"] = c.sigma_g2;
    j["sigma_xi2"] = c.sigma_xi2;
    j["mu"] = c.mu;
    j["taps"] = c.taps;
    j["nonlinearity"] = nonlinearity_echo(c.nonlinearity);
    j["input_dist"] = dist_name(c.input_dist);
    j["noise_dist"] = dist_name(c.noise_dist);
    return j;
}

} // namespace satlms_tool
