#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "satlms/theory.hpp"
#include "satlms_tool/commands.hpp"
#include "satlms_tool/config_io.hpp"
#include "satlms_tool/csv.hpp"
#include "satlms_tool/errors.hpp"
#include "satlms_tool/impulse_io.hpp"

namespace fs = std::filesystem;
using satlms_tool::Command;
using satlms_tool::RunManifest;

namespace {

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "satlms_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string write_temp(const std::string& name, const std::string& text) {
    const fs::path p = scratch_dir() / name;
    std::ofstream out(p);
    out << text;
    out.close();
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

/// Parse a CSV written by the tool: comment lines are collected verbatim
/// (without "# "), the first non-comment line is the header, the rest are
/// rows of strings.
struct ParsedCsv {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t col(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        REQUIRE_MESSAGE(false, ("no column " + name).c_str());
        return 0;
    }
    double num(std::size_t row, const std::string& name) const {
        const std::string& cell = rows.at(row).at(col(name));
        double v = 0.0;
        auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        REQUIRE(res.ec == std::errc{});
        return v;
    }
};

ParsedCsv parse_csv(const std::string& path) {
    ParsedCsv csv;
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) {
            csv.comments.push_back(line.substr(2));
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream row(line);
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (csv.header.empty())
            csv.header = cells;
        else
            csv.rows.push_back(cells);
    }
    return csv;
}

bool has_comment_starting(const ParsedCsv& csv, const std::string& prefix) {
    for (const auto& c : csv.comments)
        if (c.rfind(prefix, 0) == 0) return true;
    return false;
}

RunManifest manifest(Command cmd, const std::string& config, const std::string& out) {
    RunManifest m;
    m.command = cmd;
    m.config_path = config;
    m.output_path = out;
    return m;
}

const char* kSmallSim = R"({
    "rho2": 1.0,
    "sigma_g2": 1.0,
    "mu": 1.0,
    "taps": 32,
    "nonlinearity": {"kind": "saturation", "threshold": 0.5},
    "trials": 5,
    "t_end": 2.0,
    "record_every": 16,
    "seed": 11,
    "impulse_response": "random:4:32"
})";

} // namespace

TEST_CASE("config loading rejects unknown and mistyped keys") {
    using satlms_tool::parse_config_text;

    CHECK_NOTHROW(parse_config_text(R"({"mu": 0.5})", "t"));

    CHECK_THROWS_WITH_AS(parse_config_text(R"({"muu": 0.5})", "t"),
                         "config: t: key 'muu' is not recognized",
                         satlms_tool::ConfigParse);
    CHECK_THROWS_WITH_AS(
        parse_config_text(R"({"nonlinearity": {"kind": "saturation", "treshold": 1}})", "t"),
        "config: t: key 'nonlinearity.treshold' is not recognized",
        satlms_tool::ConfigParse);
    CHECK_THROWS_AS(parse_config_text("[1,2]", "t"), satlms_tool::ConfigParse);
    CHECK_THROWS_AS(parse_config_text("{", "t"), satlms_tool::ConfigParse);

    // typed getters
    auto c = parse_config_text(R"({"mu": "fast", "taps": -3, "stat": 7})", "t");
    CHECK_THROWS_AS(satlms_tool::num_or(c, "mu", 1.0), satlms_tool::ConfigParse);
    CHECK_THROWS_AS(satlms_tool::uint_or(c, "taps", 1), satlms_tool::ConfigParse);
    CHECK_THROWS_AS(satlms_tool::str_or(c, "stat", "mean"), satlms_tool::ConfigParse);

    // enum-valued fields reject unknown spellings
    auto bad_kind = parse_config_text(R"({"nonlinearity": {"kind": "clip"}})", "t");
    CHECK_THROWS_AS(satlms_tool::experiment_from(bad_kind), satlms_tool::ConfigParse);
    auto bad_dist = parse_config_text(R"({"input_dist": "cauchy"})", "t");
    CHECK_THROWS_AS(satlms_tool::experiment_from(bad_dist), satlms_tool::ConfigParse);
    auto bad_alg = parse_config_text(R"({"algorithm": "rls"})", "t");
    CHECK_THROWS_AS(satlms_tool::algorithm_from(bad_alg), satlms_tool::ConfigParse);

    // core validation still applies after parsing
    auto bad_mu = parse_config_text(R"({"mu": -1.0})", "t");
    CHECK_THROWS_AS(satlms_tool::experiment_from(bad_mu), satlms::NonPositiveParameter);
}

TEST_CASE("threshold accepts numbers and the string inf") {
    auto c = satlms_tool::parse_config_text(
        R"({"nonlinearity": {"kind": "saturation", "threshold": "inf"}})", "t");
    const auto cfg = satlms_tool::experiment_from(c);
    CHECK(std::isinf(cfg.nonlinearity.threshold));
    CHECK(cfg.nonlinearity.is_identity());

    auto bad = satlms_tool::parse_config_text(
        R"({"nonlinearity": {"threshold": "huge"}})", "t");
    CHECK_THROWS_AS(satlms_tool::experiment_from(bad), satlms_tool::ConfigParse);
}

TEST_CASE("overrides merge dotted paths and re-check keys") {
    auto c = satlms_tool::parse_config_text(R"({"mu": 1.0})", "t");
    satlms_tool::apply_overrides(c, {{"mu", "0.25"},
                                     {"nonlinearity.threshold", "2.5"},
                                     {"nonlinearity.kind", "dead_zone"},
                                     {"impulse_response", "random:3:16"}});
    const auto cfg = satlms_tool::experiment_from(c);
    CHECK(cfg.mu == 0.25);
    CHECK(cfg.nonlinearity.kind == satlms::NonlinKind::DeadZone);
    CHECK(cfg.nonlinearity.threshold == 2.5);
    CHECK(satlms_tool::str_or(c, "impulse_response", "") == "random:3:16");

    CHECK_THROWS_WITH_AS(satlms_tool::apply_overrides(c, {{"mystery", "1"}}),
                         "config: --set: key 'mystery' is not recognized",
                         satlms_tool::ConfigParse);
}

TEST_CASE("format_double round-trips doubles exactly") {
    for (const double v :
         {0.1, 0.05, 1.0 / 3.0, 6.02214076e23, -1.7976931348623157e308,
          5e-324, 0.0, -2.5, 199.9975, 0.8484646848550592}) {
        const std::string text = satlms_tool::format_double(v);
        double back = 0.0;
        auto res = std::from_chars(text.data(), text.data() + text.size(), back);
        REQUIRE(res.ec == std::errc{});
        CHECK(back == v);
    }
    CHECK(satlms_tool::format_double(std::nan("")) == "nan");
    CHECK(satlms_tool::format_double(INFINITY) == "inf");
    CHECK(satlms_tool::format_double(-INFINITY) == "-inf");
}

TEST_CASE("impulse response loading") {
    SUBCASE("file with comments and blanks") {
        const auto path = write_temp("resp_ok.txt",
                                     "# synthetic example\n\n 1.5 \n-0.25\n3e-2\n");
        const auto raw = satlms_tool::load_raw_response(path);
        REQUIRE(raw.size() == 3);
        CHECK(raw[0] == 1.5);
        CHECK(raw[1] == -0.25);
        CHECK(raw[2] == 0.03);
    }
    SUBCASE("missing file names the path") {
        const std::string path = (scratch_dir() / "no_such_response.txt").string();
        try {
            satlms_tool::load_raw_response(path);
            FAIL("expected ImpulseResponseLoad");
        } catch (const satlms_tool::ImpulseResponseLoad& e) {
            CHECK(std::string(e.what()).find("no_such_response.txt") != std::string::npos);
        }
    }
    SUBCASE("bad line is reported with its number") {
        const auto path = write_temp("resp_bad.txt", "1.0\n0.5 oops\n");
        try {
            satlms_tool::load_raw_response(path);
            FAIL("expected ImpulseResponseLoad");
        } catch (const satlms_tool::ImpulseResponseLoad& e) {
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
    SUBCASE("random directive is deterministic in its seed") {
        const auto a = satlms_tool::load_raw_response("random:7:32");
        const auto b = satlms_tool::load_raw_response("random:7:32");
        const auto c = satlms_tool::load_raw_response("random:8:32");
        REQUIRE(a.size() == 32);
        CHECK(a == b);
        CHECK(a != c);
    }
    SUBCASE("malformed directives") {
        CHECK_THROWS_AS(satlms_tool::load_raw_response("random:x:5"),
                        satlms_tool::ImpulseResponseLoad);
        CHECK_THROWS_AS(satlms_tool::load_raw_response("random:5"),
                        satlms_tool::ImpulseResponseLoad);
        CHECK_THROWS_AS(satlms_tool::load_raw_response("random:5:0"),
                        satlms_tool::ImpulseResponseLoad);
    }
    SUBCASE("resolve wraps normalization errors with the source") {
        try {
            satlms_tool::resolve_response("random:1:64", 32, 1.0);
            FAIL("expected ImpulseResponseLoad");
        } catch (const satlms_tool::ImpulseResponseLoad& e) {
            const std::string what = e.what();
            CHECK(what.find("random:1:64") != std::string::npos);
            CHECK(what.find("exceeds tap count") != std::string::npos);
        }
        const auto g = satlms_tool::resolve_response("random:1:24", 32, 0.7);
        CHECK(g.original_len == 24);
        CHECK(g.padded_len == 32);
        CHECK(g.sigma_g2() == doctest::Approx(0.7).epsilon(1e-12));
    }
}

TEST_CASE("cmd_theory output re-parses to direct theory calls bit-exactly") {
    const auto config = write_temp("theory.json", R"({
        "mu": 1.5,
        "nonlinearity": {"kind": "dead_zone", "threshold": 1.0},
        "sigma_xi2": 0.05,
        "t_end": 4.0,
        "t_step": 0.5
    })");
    const std::string out = (scratch_dir() / "theory.csv").string();
    REQUIRE(satlms_tool::cmd_theory(manifest(Command::Theory, config, out)) == 0);

    const auto csv = parse_csv(out);
    REQUIRE(csv.rows.size() == 9); // t = 0, 0.5, ..., 4.0
    CHECK(csv.header ==
          std::vector<std::string>{"t", "r", "q", "mse", "nmsd"});

    satlms::ExperimentConfig cfg;
    cfg.mu = 1.5;
    cfg.sigma_xi2 = 0.05;
    cfg.nonlinearity = satlms::dead_zone(1.0);
    const auto sol = satlms::theory::solve(cfg);
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        const double t = csv.num(i, "t");
        const auto st = satlms::theory::macro_at(sol, t);
        // shortest round-trip formatting makes the parsed values exact
        CHECK(csv.num(i, "r") == st.r);
        CHECK(csv.num(i, "q") == st.q);
        CHECK(csv.num(i, "mse") == satlms::theory::mse_at(sol, t));
        CHECK(csv.num(i, "nmsd") == cfg.sigma_g2 - 2.0 * st.r + st.q);
    }
}

TEST_CASE("echoed config reproduces the file byte for byte") {
    const auto config = write_temp("echo_a.json", R"({
        "mu": 0.75,
        "nonlinearity": {"kind": "saturation", "threshold": 0.8},
        "t_end": 3.0,
        "t_step": 0.25
    })");
    const std::string out_a = (scratch_dir() / "echo_a.csv").string();
    REQUIRE(satlms_tool::cmd_theory(manifest(Command::Theory, config, out_a)) == 0);

    // pull the resolved config out of the '# config = ...' comment line
    const auto csv = parse_csv(out_a);
    std::string echoed;
    for (const auto& c : csv.comments)
        if (c.rfind("config = ", 0) == 0) echoed = c.substr(9);
    REQUIRE(!echoed.empty());

    const auto config_b = write_temp("echo_b.json", echoed);
    const std::string out_b = (scratch_dir() / "echo_b.csv").string();
    REQUIRE(satlms_tool::cmd_theory(manifest(Command::Theory, config_b, out_b)) == 0);
    CHECK(slurp(out_a) == slurp(out_b));
}

TEST_CASE("cmd_theory single row at t_end = 0") {
    const auto config = write_temp("theory0.json", R"({"t_end": 0.0})");
    const std::string out = (scratch_dir() / "theory0.csv").string();
    REQUIRE(satlms_tool::cmd_theory(manifest(Command::Theory, config, out)) == 0);
    const auto csv = parse_csv(out);
    REQUIRE(csv.rows.size() == 1);
    CHECK(csv.num(0, "t") == 0.0);
    CHECK(csv.num(0, "r") == 0.0);
}

TEST_CASE("cmd_simulate is bit-identical across runs and thread counts") {
    const auto config = write_temp("sim.json", kSmallSim);
    const std::string out1 = (scratch_dir() / "sim1.csv").string();
    const std::string out2 = (scratch_dir() / "sim2.csv").string();

    auto m1 = manifest(Command::Simulate, config, out1);
    REQUIRE(satlms_tool::cmd_simulate(m1) == 0);
    auto m2 = manifest(Command::Simulate, config, out2);
    m2.threads = 3;
    REQUIRE(satlms_tool::cmd_simulate(m2) == 0);
    CHECK(slurp(out1) == slurp(out2));

    // and a third run single-threaded again
    auto m3 = manifest(Command::Simulate, config, out2);
    REQUIRE(satlms_tool::cmd_simulate(m3) == 0);
    CHECK(slurp(out1) == slurp(out2));

    const auto csv = parse_csv(out1);
    CHECK(csv.header ==
          std::vector<std::string>{"t", "mse_center", "mse_spread", "nmsd_center",
                                   "nmsd_spread", "r_center", "q_center"});
    // steps = 64, record_every = 16, plus the final step
    REQUIRE(csv.rows.size() == 5);
    CHECK(csv.num(0, "t") == 0.0);
    CHECK(csv.num(4, "t") == 63.0 / 32.0);
    CHECK(csv.num(0, "nmsd_center") == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("--seed and --set change the simulate output") {
    const auto config = write_temp("sim_seed.json", kSmallSim);
    const std::string out1 = (scratch_dir() / "seed1.csv").string();
    const std::string out2 = (scratch_dir() / "seed2.csv").string();

    auto base = manifest(Command::Simulate, config, out1);
    REQUIRE(satlms_tool::cmd_simulate(base) == 0);

    auto reseeded = manifest(Command::Simulate, config, out2);
    reseeded.seed_set = true;
    reseeded.seed = 99;
    REQUIRE(satlms_tool::cmd_simulate(reseeded) == 0);
    CHECK(slurp(out1) != slurp(out2));

    auto widened = manifest(Command::Simulate, config, out2);
    widened.overrides["trials"] = "6";
    REQUIRE(satlms_tool::cmd_simulate(widened) == 0);
    const auto csv = parse_csv(out2);
    CHECK(has_comment_starting(csv, "config = ") );
    for (const auto& c : csv.comments)
        if (c.rfind("config = ", 0) == 0)
            CHECK(c.find("\"trials\":6") != std::string::npos);
}

TEST_CASE("cmd_compare verdicts on a small converging case") {
    const auto config = write_temp("cmp.json", R"({
        "mu": 1.0,
        "taps": 100,
        "nonlinearity": {"kind": "saturation", "threshold": 0.5},
        "trials": 40,
        "t_end": 3.0,
        "record_every": 50,
        "seed": 2,
        "impulse_response": "random:2:100"
    })");
    const std::string out = (scratch_dir() / "cmp.csv").string();
    const int code = satlms_tool::cmd_compare(manifest(Command::Compare, config, out));
    CHECK(code == 0);

    const auto csv = parse_csv(out);
    CHECK(has_comment_starting(csv, "summary max_abs_mse_delta = "));
    CHECK(has_comment_starting(csv, "summary converges = true"));
    CHECK(has_comment_starting(csv, "summary band_check = PASS"));
    // t_end = 3 is far from steady state at rate 1, so the verdict is skipped
    CHECK(has_comment_starting(csv, "summary steady_check = SKIPPED"));

    // theory columns equal direct theory calls bit-exactly
    satlms::ExperimentConfig cfg;
    cfg.mu = 1.0;
    cfg.taps = 100;
    cfg.nonlinearity = satlms::saturation(0.5);
    const auto sol = satlms::theory::solve(cfg);
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        const double t = csv.num(i, "t");
        CHECK(csv.num(i, "mse_theory") == satlms::theory::mse_at(sol, t));
        CHECK(csv.num(i, "r_theory") == satlms::theory::macro_at(sol, t).r);
    }
}

TEST_CASE("cmd_compare flags divergence and omits the steady verdict") {
    const auto config = write_temp("cmp_div.json", R"({
        "mu": 2.5,
        "taps": 64,
        "nonlinearity": {"kind": "saturation", "threshold": 1.0},
        "trials": 10,
        "t_end": 2.0,
        "record_every": 32,
        "seed": 3,
        "impulse_response": "random:3:64"
    })");
    const std::string out = (scratch_dir() / "cmp_div.csv").string();
    const int code = satlms_tool::cmd_compare(manifest(Command::Compare, config, out));
    CHECK((code == 0 || code == 1)); // band check may go either way at this size

    const auto csv = parse_csv(out);
    CHECK(has_comment_starting(csv, "summary converges = false"));
    CHECK(!has_comment_starting(csv, "summary steady_check"));
}

TEST_CASE("steady sweep: identical mse columns, differing nmsd, peak near 0.8485") {
    const char* base = R"({
        "mu": 1.0,
        "nonlinearity": {"kind": "%s", "threshold": 1.0},
        "sweep_min": 0.0,
        "sweep_max": 3.0,
        "sweep_points": 29
    })";
    char sat_text[512], dz_text[512];
    std::snprintf(sat_text, sizeof sat_text, base, "saturation");
    std::snprintf(dz_text, sizeof dz_text, base, "dead_zone");

    const auto sat_cfg = write_temp("sweep_sat.json", sat_text);
    const auto dz_cfg = write_temp("sweep_dz.json", dz_text);
    const std::string sat_out = (scratch_dir() / "sweep_sat.csv").string();
    const std::string dz_out = (scratch_dir() / "sweep_dz.csv").string();
    REQUIRE(satlms_tool::cmd_steady_sweep(
                manifest(Command::SteadySweep, sat_cfg, sat_out)) == 0);
    REQUIRE(satlms_tool::cmd_steady_sweep(
                manifest(Command::SteadySweep, dz_cfg, dz_out)) == 0);

    const auto sat = parse_csv(sat_out);
    const auto dz = parse_csv(dz_out);
    REQUIRE(sat.rows.size() == 29);
    REQUIRE(dz.rows.size() == 29);

    std::size_t argmax = 0;
    for (std::size_t i = 0; i < sat.rows.size(); ++i) {
        // the steady-state MSE does not depend on the nonlinearity type
        CHECK(sat.num(i, "mse_theory") == dz.num(i, "mse_theory"));
        if (sat.num(i, "mse_theory") > sat.num(argmax, "mse_theory")) argmax = i;
        // the normalized MSD does, away from the ends of the sweep
        const double u = sat.num(i, "threshold_over_rho_sigma_g");
        if (u > 0.2 && u < 2.8)
            CHECK(sat.num(i, "nmsd_theory") != dz.num(i, "nmsd_theory"));
    }
    // 29 points over [0, 3]: the grid point nearest the maximizer is 0.857...
    const double u_star = 0.8484646848550592;
    double best = 1e9;
    std::size_t nearest = 0;
    for (std::size_t i = 0; i < sat.rows.size(); ++i) {
        const double d = std::fabs(sat.num(i, "threshold_over_rho_sigma_g") - u_star);
        if (d < best) {
            best = d;
            nearest = i;
        }
    }
    CHECK(argmax == nearest);
}

TEST_CASE("steady sweep with simulation columns at desk scale") {
    const auto config = write_temp("sweep_sim.json", R"({
        "mu": 1.0,
        "taps": 64,
        "nonlinearity": {"kind": "saturation", "threshold": 1.0},
        "trials": 24,
        "t_end": 40.0,
        "seed": 5,
        "sweep_min": 0.5,
        "sweep_max": 1.5,
        "sweep_points": 3,
        "impulse_response": "random:5:64"
    })");
    const std::string out = (scratch_dir() / "sweep_sim.csv").string();
    auto m = manifest(Command::SteadySweep, config, out);
    m.with_sim = true;
    REQUIRE(satlms_tool::cmd_steady_sweep(m) == 0);

    const auto csv = parse_csv(out);
    REQUIRE(csv.rows.size() == 3);
    REQUIRE(csv.header.size() == 7);
    for (std::size_t i = 0; i < 3; ++i) {
        // windowed per-trial averages put the median near the theory mean;
        // the band here is loose because N = 64 carries finite-size bias
        const double mse_th = csv.num(i, "mse_theory");
        const double se =
            1.2533 * csv.num(i, "mse_sim_std") / std::sqrt(24.0);
        CHECK(std::fabs(csv.num(i, "mse_sim_median") - mse_th) <=
              3.0 * se + 0.05 * mse_th);
        CHECK(csv.num(i, "mse_sim_std") > 0.0);
        CHECK(csv.num(i, "nmsd_sim_median") > 0.0);
    }

    // thread count must not change the bytes (per-trial scalars are joined
    // by trial index before any reduction)
    const std::string out2 = (scratch_dir() / "sweep_sim2.csv").string();
    auto m2 = manifest(Command::SteadySweep, config, out2);
    m2.with_sim = true;
    m2.threads = 5;
    REQUIRE(satlms_tool::cmd_steady_sweep(m2) == 0);
    CHECK(slurp(out) == slurp(out2));
}

TEST_CASE("maximize is invariant to mu and noise, residual tiny") {
    const auto mk = [](const char* name, double mu, double xi2) {
        std::ostringstream text;
        text << R"({"mu": )" << mu << R"(, "sigma_xi2": )" << xi2 << "}";
        return write_temp(name, text.str());
    };
    const std::string out1 = (scratch_dir() / "max1.csv").string();
    const std::string out2 = (scratch_dir() / "max2.csv").string();
    const std::string out3 = (scratch_dir() / "max3.csv").string();
    REQUIRE(satlms_tool::cmd_maximize(
                manifest(Command::Maximize, mk("max1.json", 0.3, 0.0), out1)) == 0);
    REQUIRE(satlms_tool::cmd_maximize(
                manifest(Command::Maximize, mk("max2.json", 1.7, 0.0), out2)) == 0);
    REQUIRE(satlms_tool::cmd_maximize(
                manifest(Command::Maximize, mk("max3.json", 1.0, 0.5), out3)) == 0);

    const auto a = parse_csv(out1);
    const auto b = parse_csv(out2);
    const auto c = parse_csv(out3);
    CHECK(a.num(0, "threshold_star") == b.num(0, "threshold_star"));
    CHECK(a.num(0, "threshold_star") == c.num(0, "threshold_star"));
    CHECK(a.num(0, "threshold_star_over_rho_sigma_g") ==
          doctest::Approx(0.8485).epsilon(2e-4));
    CHECK(std::fabs(a.num(0, "residual")) <= 1e-12);
    // the steady-state MSE at the maximizer does depend on mu
    CHECK(a.num(0, "mse_at_star") != b.num(0, "mse_at_star"));
}

TEST_CASE("cmd_moments grid passes the oracle check") {
    const auto config = write_temp("moments.json", R"({"rho2": 1.3, "sigma_g2": 0.8})");
    const std::string out = (scratch_dir() / "moments.csv").string();
    REQUIRE(satlms_tool::cmd_moments(manifest(Command::Moments, config, out)) == 0);

    const auto csv = parse_csv(out);
    CHECK(has_comment_starting(csv, "summary oracle_check = PASS"));
    REQUIRE(csv.rows.size() == 50);

    const auto kind_col = csv.col("kind");
    const double c = 1.3 * 0.8; // rho^2 sigma_g^2
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        const bool sat = csv.rows[i][kind_col] == "saturation";
        if (csv.num(i, "threshold") != 0.0) continue;
        if (sat) {
            // saturation at threshold 0 kills every f moment
            CHECK(csv.num(i, "fx2_closed") == 0.0);
            CHECK(csv.num(i, "fxy_closed") == 0.0);
            CHECK(csv.num(i, "fxx_closed") == 0.0);
        } else {
            // dead zone at threshold 0 is the identity: linear moments
            CHECK(csv.num(i, "fx2_closed") == doctest::Approx(c).epsilon(1e-12));
            CHECK(csv.num(i, "fxy_closed") ==
                  doctest::Approx(1.3 * csv.num(i, "r")).epsilon(1e-12));
            CHECK(csv.num(i, "fxx_closed") == doctest::Approx(c).epsilon(1e-12));
        }
    }
}

TEST_CASE("satlms binary smoke test") {
    const char* bin = std::getenv("SATLMS_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "SATLMS_BIN must point at the satlms binary");

    const auto config = write_temp("smoke.json", R"({"rho2": 1.0, "sigma_g2": 1.0})");
    const std::string out = (scratch_dir() / "smoke.csv").string();
    const std::string cmd = std::string("\"") + bin + "\" maximize --config \"" +
                            config + "\" --out \"" + out + "\" > /dev/null";
    REQUIRE(std::system(cmd.c_str()) == 0);
    const auto csv = parse_csv(out);
    CHECK(csv.num(0, "threshold_star_over_rho_sigma_g") ==
          doctest::Approx(0.8485).epsilon(2e-4));

    // bad usage exits nonzero and writes nothing
    const std::string bad = std::string("\"") + bin +
                            "\" maximize --config /nonexistent.json --out \"" + out +
                            "\" 2> /dev/null";
    CHECK(std::system(bad.c_str()) != 0);
}
