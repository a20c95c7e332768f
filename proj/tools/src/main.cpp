#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "satlms/errors.hpp"
#include "satlms_tool/commands.hpp"

namespace {

/// --threads beats SATLMS_THREADS beats single-threaded.
unsigned resolve_threads(bool flag_given, unsigned flag_value) {
    if (flag_given) return flag_value;
    if (const char* env = std::getenv("SATLMS_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v < 1u << 16) return static_cast<unsigned>(v);
        std::cerr << "satlms: ignoring malformed SATLMS_THREADS='" << env << "'\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"closed-form learning dynamics of LMS system identification "
                 "with saturated or dead-zoned outputs, plus the matching "
                 "Monte Carlo simulator"};
    app.set_version_flag("--version", std::string("satlms ") + satlms_tool::kToolVersion);
    app.require_subcommand(1);

    satlms_tool::RunManifest m;
    std::vector<std::string> sets;
    unsigned threads = 0;

    struct Sub {
        const char* name;
        const char* help;
        satlms_tool::Command command;
        bool has_with_sim;
    };
    const Sub subs[] = {
        {"theory", "closed-form learning curves on a t grid", satlms_tool::Command::Theory, false},
        {"simulate", "Monte Carlo ensemble learning curves", satlms_tool::Command::Simulate, false},
        {"compare", "simulation joined against theory, with verdicts", satlms_tool::Command::Compare, false},
        {"steady-sweep", "steady-state MSE and MSD against threshold", satlms_tool::Command::SteadySweep, true},
        {"maximize", "threshold that maximizes the steady-state MSE", satlms_tool::Command::Maximize, false},
        {"moments", "closed-form moments against the quadrature oracle", satlms_tool::Command::Moments, false},
    };

    for (const Sub& sub : subs) {
        CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
        cmd->add_option("--config", m.config_path, "JSON config file")->required();
        cmd->add_option("--out", m.output_path, "output CSV path")->required();
        cmd->add_option("--set", sets,
                        "override a config key, key=value (dots nest, e.g. "
                        "nonlinearity.threshold=0.5)");
        cmd->add_option("--seed", m.seed, "override the ensemble seed");
        cmd->add_option("--threads", threads, "worker threads (default SATLMS_THREADS, else 1)");
        if (sub.has_with_sim)
            cmd->add_flag("--with-sim", m.with_sim, "add Monte Carlo columns");
        cmd->callback([&m, &sub] { m.command = sub.command; });
    }

    CLI11_PARSE(app, argc, argv);

    CLI::App* active = app.get_subcommands().front();
    m.seed_set = active->count("--seed") > 0;
    m.threads = resolve_threads(active->count("--threads") > 0, threads);
    for (const std::string& spec : sets) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) {
            std::cerr << "satlms: error: --set needs key=value, got '" << spec << "'\n";
            return 2;
        }
        m.overrides[spec.substr(0, eq)] = spec.substr(eq + 1);
    }

    try {
        return satlms_tool::run(m);
    } catch (const satlms::Error& e) {
        std::cerr << "satlms: error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "satlms: unexpected error: " << e.what() << "\n";
        return 2;
    }
}
