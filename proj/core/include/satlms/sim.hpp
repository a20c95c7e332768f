#pragma once

#include <cstdint>
#include <vector>

#include "satlms/config.hpp"
#include "satlms/impulse_response.hpp"
#include "satlms/trajectory.hpp"

namespace satlms::sim {

enum class Algorithm { LMS, NLMS };
enum class Stat { Mean, Median };

/// One Monte Carlo experiment: the scenario, the unknown system, and the
/// ensemble bookkeeping. `steps` counts filter updates; t runs to steps / N.
struct SimPlan {
    ExperimentConfig config{};
    ImpulseResponse g{};
    std::size_t trials = 100;
    std::size_t steps = 1;
    std::uint64_t seed = 1;
    Algorithm algorithm = Algorithm::LMS;
    double nlms_mu_tilde = 1.0; // used only by NLMS
    std::size_t record_every = 0; // 0 = auto (cap at 10^4 recorded points)
    Stat stat = Stat::Mean;
};

/// Ensemble statistic of one recorded step: center and spread of e^2 and of
/// the normalized MSD over trials (mean/stddev or median/stddev depending on
/// the plan), plus the centers of the measured overlaps.
struct EnsembleStats {
    double t = 0.0;
    double mse_center = 0.0;
    double mse_spread = 0.0;
    double nmsd_center = 0.0;
    double nmsd_spread = 0.0;
    double r_center = 0.0;
    double q_center = 0.0;
};

/// Recorded series of a single trial at the plan's recorded steps.
struct TrialSeries {
    std::vector<double> e2;
    std::vector<double> nmsd;
    std::vector<double> r;
    std::vector<double> q;
};

struct EnsembleResult {
    Trajectory trajectory;
    std::vector<EnsembleStats> stats;
};

/// Steps at which a trial records its state: every record_every-th update
/// plus the final one. record_every = 0 picks the smallest decimation that
/// keeps at most 10^4 recorded points.
std::vector<std::size_t> recorded_steps(const SimPlan& plan);

/// r = (1/N) sum g_i w_i, q = (1/N) sum w_i^2 from actual vectors.
/// Throws LengthMismatch when w's length differs from the padded response.
MacroState measure_macro(const ImpulseResponse& g, const std::vector<double>& w);

/// Run one trial of the plan. The delay line is pre-filled with N input
/// draws before the first update, w(0) = 0, and e(n)^2 is recorded before
/// the update it drives. Identical (plan.seed, trial_index) give bit
/// identical series regardless of what other trials run.
TrialSeries run_trial(const SimPlan& plan, std::size_t trial_index);

/// Run the whole ensemble, optionally across threads. Trials are
/// independent; reduction happens in trial-index order, so the result is
/// bit-identical for any thread count. n_threads = 0 uses one thread.
EnsembleResult run_ensemble(const SimPlan& plan, unsigned n_threads = 0);

} // namespace satlms::sim
