#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "json.hpp"
#include "satlms/config.hpp"
#include "satlms/sim.hpp"

namespace satlms_tool {

/// Configs are kept as JSON objects until a command extracts the typed
/// pieces it needs, so each command can apply its own defaults while sharing
/// one loader, one override mechanism, and one unknown-key check.
using json = nlohmann::ordered_json;

/// Parse a config file. Every key (including nested nonlinearity keys) must
/// be on the known-key list; anything else throws ConfigParse naming the key.
json load_config(const std::string& path);

/// Same checks on in-memory text; `origin` labels error messages.
json parse_config_text(const std::string& text, const std::string& origin);

/// Merge --set overrides into the object. Keys use dots for nesting
/// ("nonlinearity.threshold=0.5"); values are parsed as JSON scalars when
/// they parse, and kept as strings otherwise. Re-checks the key list.
void apply_overrides(json& config, const std::map<std::string, std::string>& overrides);

/// Typed lookups with defaults. Wrong-type values throw ConfigParse.
double num_or(const json& c, const std::string& key, double fallback);
std::uint64_t uint_or(const json& c, const std::string& key, std::uint64_t fallback);
std::string str_or(const json& c, const std::string& key, const std::string& fallback);

/// Build the ExperimentConfig part (rho2, sigma_g2, sigma_xi2, mu, taps,
/// nonlinearity, input_dist, noise_dist) and validate it.
satlms::ExperimentConfig experiment_from(const json& c);

satlms::sim::Algorithm algorithm_from(const json& c);
satlms::sim::Stat stat_from(const json& c);

/// Canonical echo fragments (threshold +inf becomes the string "inf").
json nonlinearity_echo(const satlms::Nonlinearity& nl);
std::string dist_name(satlms::Dist d);
std::string kind_name(satlms::NonlinKind k);

/// ExperimentConfig echoed with keys in a fixed order; commands append their
/// own keys so that `# config = ...` lines are stable across runs.
json experiment_echo(const satlms::ExperimentConfig& c);

} // namespace satlms_tool
