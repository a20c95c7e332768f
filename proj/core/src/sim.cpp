#include "satlms/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "satlms/errors.hpp"
#include "satlms/rng.hpp"

namespace satlms::sim {
namespace {

constexpr std::size_t kMaxRecorded = 10000;
constexpr std::uint64_t kInputSalt = 0x1;
constexpr std::uint64_t kNoiseSalt = 0x2;

void check_plan(const SimPlan& plan) {
    validate(plan.config);
    if (plan.trials < 1) throw NonPositiveParameter("trials");
    if (plan.steps < 1) throw NonPositiveParameter("steps");
    if (plan.g.padded_len != plan.config.taps) {
        throw LengthMismatch(plan.g.padded_len, plan.config.taps);
    }
    if (plan.algorithm == Algorithm::NLMS && !(plan.nlms_mu_tilde > 0.0)) {
        throw NonPositiveParameter("nlms_mu_tilde");
    }
}

std::size_t effective_record_every(const SimPlan& plan) {
    if (plan.record_every > 0) return plan.record_every;
    return (plan.steps + kMaxRecorded - 1) / kMaxRecorded; // ceil
}

double sample_stddev(double sum, double sumsq, std::size_t n) {
    if (n < 2) return 0.0;
    const double nn = static_cast<double>(n);
    double var = (sumsq - sum * sum / nn) / (nn - 1.0);
    return var > 0.0 ? std::sqrt(var) : 0.0;
}

// Median in trial-index-independent form: sort a copy.
double median_of(std::vector<double>& scratch) {
    std::sort(scratch.begin(), scratch.end());
    const std::size_t n = scratch.size();
    return n % 2 == 1 ? scratch[n / 2]
                      : 0.5 * (scratch[n / 2 - 1] + scratch[n / 2]);
}

} // namespace

std::vector<std::size_t> recorded_steps(const SimPlan& plan) {
    const std::size_t every = effective_record_every(plan);
    std::vector<std::size_t> rec;
    rec.reserve(plan.steps / every + 2);
    for (std::size_t n = 0; n < plan.steps; n += every) rec.push_back(n);
    if (rec.back() != plan.steps - 1) rec.push_back(plan.steps - 1);
    return rec;
}

MacroState measure_macro(const ImpulseResponse& g, const std::vector<double>& w) {
    if (g.coeffs.size() != w.size()) throw LengthMismatch(g.coeffs.size(), w.size());
    const double n = static_cast<double>(g.coeffs.size());
    double r = 0.0, q = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        r += g.coeffs[i] * w[i];
        q += w[i] * w[i];
    }
    return MacroState{r / n, q / n};
}

TrialSeries run_trial(const SimPlan& plan, std::size_t trial_index) {
    check_plan(plan);

    const std::size_t N = plan.config.taps;
    const double invN = 1.0 / static_cast<double>(N);
    const Nonlinearity f = plan.config.nonlinearity;
    const bool nlms = plan.algorithm == Algorithm::NLMS;
    const bool noisy = plan.config.sigma_xi2 > 0.0;

    // Tap order inside the window is time-ascending, so the unknown system
    // is applied through the reversed coefficient vector. The overlap
    // r = (1/N) g^T w is invariant under this shared reindexing.
    std::vector<double> grev(plan.g.coeffs.rbegin(), plan.g.coeffs.rend());
    std::vector<double> w(N, 0.0);

    // Ring buffer with a mirrored second half keeps the current window
    // contiguous; `pos` is the next write slot.
    std::vector<double> ring(2 * N, 0.0);
    std::size_t pos = 0;
    auto push = [&](double v) {
        ring[pos] = v;
        ring[pos + N] = v;
        pos = pos + 1 == N ? 0 : pos + 1;
    };

    DistSampler input(plan.config.input_dist, plan.config.input_variance(),
                      plan.seed, trial_index, kInputSalt);
    DistSampler noise(plan.config.noise_dist, plan.config.sigma_xi2, plan.seed,
                      trial_index, kNoiseSalt);

    // Warm-up: fill the delay line so u(0) is fully populated.
    for (std::size_t i = 0; i < N; ++i) push(input.draw());

    const auto rec = recorded_steps(plan);
    TrialSeries out;
    out.e2.reserve(rec.size());
    out.nmsd.reserve(rec.size());
    out.r.reserve(rec.size());
    out.q.reserve(rec.size());

    std::size_t next_rec = 0;
    for (std::size_t n = 0; n < plan.steps; ++n) {
        const double* u = &ring[pos];

        double x = 0.0, y = 0.0, unorm2 = 0.0;
        if (nlms) {
            for (std::size_t k = 0; k < N; ++k) {
                x += grev[k] * u[k];
                y += w[k] * u[k];
                unorm2 += u[k] * u[k];
            }
        } else {
            for (std::size_t k = 0; k < N; ++k) {
                x += grev[k] * u[k];
                y += w[k] * u[k];
            }
        }

        const double e = f(x) - y + (noisy ? noise.draw() : 0.0);

        if (next_rec < rec.size() && rec[next_rec] == n) {
            double r = 0.0, q = 0.0, d = 0.0;
            for (std::size_t k = 0; k < N; ++k) {
                r += grev[k] * w[k];
                q += w[k] * w[k];
                const double diff = grev[k] - w[k];
                d += diff * diff;
            }
            out.e2.push_back(e * e);
            out.nmsd.push_back(d * invN);
            out.r.push_back(r * invN);
            out.q.push_back(q * invN);
            ++next_rec;
        }

        const double coef = nlms ? plan.nlms_mu_tilde * e / unorm2 : plan.config.mu * e;
        for (std::size_t k = 0; k < N; ++k) w[k] += coef * u[k];

        push(input.draw());
    }
    return out;
}

EnsembleResult run_ensemble(const SimPlan& plan, unsigned n_threads) {
    check_plan(plan);

    const auto rec = recorded_steps(plan);
    const std::size_t nrec = rec.size();
    const std::size_t trials = plan.trials;
    const unsigned threads = std::max(1u, n_threads);
    const bool median = plan.stat == Stat::Median;

    // The reducers below consume whole trials in index order; parallelism
    // only affects which worker fills which slot, never the reduction order,
    // so results are bit-identical for every thread count.
    std::vector<double> sum_e2(nrec, 0.0), sumsq_e2(nrec, 0.0);
    std::vector<double> sum_nmsd(nrec, 0.0), sumsq_nmsd(nrec, 0.0);
    std::vector<double> sum_r(nrec, 0.0), sum_q(nrec, 0.0);
    // Median needs every trial's series; the mean path streams per chunk.
    std::vector<TrialSeries> kept;

    auto accumulate = [&](const TrialSeries& s) {
        for (std::size_t j = 0; j < nrec; ++j) {
            sum_e2[j] += s.e2[j];
            sumsq_e2[j] += s.e2[j] * s.e2[j];
            sum_nmsd[j] += s.nmsd[j];
            sumsq_nmsd[j] += s.nmsd[j] * s.nmsd[j];
            sum_r[j] += s.r[j];
            sum_q[j] += s.q[j];
        }
    };

    const std::size_t chunk =
        median ? trials : std::min<std::size_t>(trials, std::max(8u, 4u * threads));
    std::vector<TrialSeries> slots(chunk);

    for (std::size_t base = 0; base < trials; base += chunk) {
        const std::size_t count = std::min(chunk, trials - base);
        if (threads <= 1 || count <= 1) {
            for (std::size_t i = 0; i < count; ++i) {
                slots[i] = run_trial(plan, base + i);
            }
        } else {
            std::atomic<std::size_t> next{0};
            auto worker = [&]() {
                for (std::size_t i = next.fetch_add(1); i < count;
                     i = next.fetch_add(1)) {
                    slots[i] = run_trial(plan, base + i);
                }
            };
            std::vector<std::thread> pool;
            const unsigned spawn = static_cast<unsigned>(
                std::min<std::size_t>(threads, count));
            pool.reserve(spawn);
            for (unsigned i = 0; i < spawn; ++i) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        for (std::size_t i = 0; i < count; ++i) accumulate(slots[i]);
        if (median && base + count >= trials) kept = std::move(slots);
    }

    const double tn = static_cast<double>(trials);
    EnsembleResult res;
    res.stats.resize(nrec);
    res.trajectory.source = TrajectorySource::Simulation;
    res.trajectory.meta = plan.config;
    res.trajectory.points.resize(nrec);

    std::vector<double> scratch;
    for (std::size_t j = 0; j < nrec; ++j) {
        EnsembleStats& st = res.stats[j];
        st.t = static_cast<double>(rec[j]) / static_cast<double>(plan.config.taps);
        st.mse_spread = sample_stddev(sum_e2[j], sumsq_e2[j], trials);
        st.nmsd_spread = sample_stddev(sum_nmsd[j], sumsq_nmsd[j], trials);
        if (median) {
            auto column = [&](auto member) {
                scratch.clear();
                for (std::size_t i = 0; i < trials; ++i) {
                    scratch.push_back((kept[i].*member)[j]);
                }
                return median_of(scratch);
            };
            st.mse_center = column(&TrialSeries::e2);
            st.nmsd_center = column(&TrialSeries::nmsd);
            st.r_center = column(&TrialSeries::r);
            st.q_center = column(&TrialSeries::q);
        } else {
            st.mse_center = sum_e2[j] / tn;
            st.nmsd_center = sum_nmsd[j] / tn;
            st.r_center = sum_r[j] / tn;
            st.q_center = sum_q[j] / tn;
        }

        TrajectoryPoint& p = res.trajectory.points[j];
        p.t = st.t;
        p.state = MacroState{st.r_center, st.q_center};
        p.mse = st.mse_center;
        p.nmsd = std::max(0.0, plan.config.sigma_g2 - 2.0 * st.r_center + st.q_center);
    }
    return res;
}

} // namespace satlms::sim
