#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace satlms_tool {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Command { Theory, Simulate, Compare, SteadySweep, Maximize, Moments };

/// Everything one invocation needs: the subcommand, the two paths, and the
/// cross-cutting flags. Threads are runtime plumbing and are deliberately
/// kept out of the output files so thread-count changes cannot alter them.
struct RunManifest {
    Command command = Command::Theory;
    std::string config_path;
    std::string output_path;
    std::map<std::string, std::string> overrides; // raw key=value pairs
    bool with_sim = false;
    unsigned threads = 0; // 0 = single thread
    bool seed_set = false;
    std::uint64_t seed = 0;
    bool quiet = false; // suppress progress lines on stdout (file output only)
};

/// Dispatch to the command. Returns the process exit code: 0 when the run
/// succeeded and every enabled verdict passed, 1 when a verdict failed.
/// Errors are reported by throwing (satlms::Error or a tool error).
int run(const RunManifest& m);

int cmd_theory(const RunManifest& m);
int cmd_simulate(const RunManifest& m);
int cmd_compare(const RunManifest& m);
int cmd_steady_sweep(const RunManifest& m);
int cmd_maximize(const RunManifest& m);
int cmd_moments(const RunManifest& m);

} // namespace satlms_tool
