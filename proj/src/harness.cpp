#include "evident/harness.hpp"

#include <algorithm>
#include <cmath>

#include "evident/rng.hpp"

namespace evident {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double binomial_stderr(double p_hat, std::size_t n) {
    return std::sqrt(std::max(p_hat * (1.0 - p_hat), 0.0) / static_cast<double>(n));
}

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
    double stderr_of_mean = 0.0;
};

// Kahan mean/sd in index order.
MeanSd mean_sd(std::span<const double> values) {
    MeanSd r;
    if (values.empty()) return r;
    double sum = 0.0, comp = 0.0;
    for (double v : values) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    r.mean = sum / static_cast<double>(values.size());
    double ss = 0.0, ss_comp = 0.0;
    for (double v : values) {
        const double d = v - r.mean;
        const double y = d * d - ss_comp;
        const double t = ss + y;
        ss_comp = (t - ss) - y;
        ss = t;
    }
    r.sd = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
    r.stderr_of_mean = r.sd / std::sqrt(static_cast<double>(values.size()));
    return r;
}

// i*log(i) lookup, i = 0..n (0 log 0 = 0). Shared by the improper
// maximum-likelihood evidence at every step.
std::vector<double> xlogx_table(std::size_t n) {
    std::vector<double> tab(n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i)
        tab[i] = static_cast<double>(i) * std::log(static_cast<double>(i));
    return tab;
}

}  // namespace

nlohmann::json ExperimentResult::to_json() const {
    return {{"name", name},
            {"metrics", metrics},
            {"mc_stderr", mc_stderr},
            {"reps", reps},
            {"seed", seed}};
}

void write_trajectories_csv(const ExperimentResult& result, std::ostream& os) {
    os << "path_id,t,log_evidence\n";
    os.precision(17);
    for (std::size_t id = 0; id < result.trajectories.size(); ++id) {
        const auto& traj = result.trajectories[id];
        for (std::size_t t = 0; t < traj.size(); ++t)
            os << id << ',' << (t + 1) << ',' << traj[t] << '\n';
    }
}

// ---------------------------------------------------------------------------
// Accumulation under the alternative
// ---------------------------------------------------------------------------

ExperimentResult experiment_accumulation(std::uint64_t seed, std::size_t reps, std::size_t T,
                                         par::Mode mode) {
    const Distribution p1 = Distribution::bernoulli(0.65);
    const Distribution p0 = Distribution::bernoulli(0.5);
    const double b = 20.0;
    const double log_b = std::log(b);
    const double inc1 = std::log(p1[1]) - std::log(p0[1]);
    const double inc0 = std::log(p1[0]) - std::log(p0[0]);
    const std::vector<double> tab = xlogx_table(T);
    const double log_half = std::log(0.5);

    std::vector<double> tau(reps, 0.0);            // crossing step or inf
    std::vector<double> slope(reps, 0.0);          // S_T / T
    std::vector<double> lr_final(reps, 0.0);       // S_T
    std::vector<double> ml_final(reps, 0.0);       // improper ML log evidence at T
    const std::size_t stored = std::min(reps, kMaxStoredTrajectories);
    std::vector<std::vector<double>> trajectories(stored);

    par::for_each_index(reps, mode, [&](std::size_t i) {
        RngStream rng(seed, i);
        double s = 0.0;
        std::size_t ones = 0;
        double first_cross = kInf;
        std::vector<double>* traj = i < stored ? &trajectories[i] : nullptr;
        if (traj) traj->reserve(T);
        for (std::size_t t = 1; t <= T; ++t) {
            const int x = sample_symbol(rng, p1);
            ones += static_cast<std::size_t>(x);
            s += x == 1 ? inc1 : inc0;
            if (first_cross == kInf && s >= log_b) first_cross = static_cast<double>(t);
            if (traj) traj->push_back(s);
        }
        tau[i] = first_cross;
        slope[i] = s / static_cast<double>(T);
        lr_final[i] = s;
        ml_final[i] = tab[ones] + tab[T - ones] - tab[T] - static_cast<double>(T) * log_half;
    });

    ExperimentResult result;
    result.name = "accumulation";
    result.reps = reps;
    result.seed = seed;
    result.trajectories = std::move(trajectories);

    std::vector<double> crossed;
    for (double t : tau)
        if (t != kInf) crossed.push_back(t);
    std::sort(crossed.begin(), crossed.end());
    const double frac = static_cast<double>(crossed.size()) / static_cast<double>(reps);
    const double median =
        crossed.empty() ? kInf
                        : (crossed.size() % 2 == 1
                               ? crossed[crossed.size() / 2]
                               : 0.5 * (crossed[crossed.size() / 2 - 1] + crossed[crossed.size() / 2]));
    const MeanSd slope_stats = mean_sd(slope);
    const MeanSd lr_stats = mean_sd(lr_final);
    const MeanSd ml_stats = mean_sd(ml_final);
    const MeanSd tau_stats = mean_sd(crossed);

    result.metrics["crossing_fraction"] = frac;
    result.mc_stderr["crossing_fraction"] = binomial_stderr(frac, reps);
    result.metrics["median_tau"] = median;
    // Normal approximation for the sample-median standard error.
    result.mc_stderr["median_tau"] =
        crossed.empty() ? kInf : 1.2533 * tau_stats.sd / std::sqrt(static_cast<double>(crossed.size()));
    result.metrics["mean_slope"] = slope_stats.mean;
    result.mc_stderr["mean_slope"] = slope_stats.stderr_of_mean;
    result.metrics["lr_mean_final_log_evidence"] = lr_stats.mean;
    result.mc_stderr["lr_mean_final_log_evidence"] = lr_stats.stderr_of_mean;
    result.metrics["ml_mean_final_log_evidence"] = ml_stats.mean;
    result.mc_stderr["ml_mean_final_log_evidence"] = ml_stats.stderr_of_mean;
    // Empirical bias of the unnormalized maximum-likelihood ratio.
    result.metrics["ml_mean_excess_over_lr"] = ml_stats.mean - lr_stats.mean;
    result.mc_stderr["ml_mean_excess_over_lr"] =
        std::sqrt(ml_stats.stderr_of_mean * ml_stats.stderr_of_mean +
                  lr_stats.stderr_of_mean * lr_stats.stderr_of_mean);
    return result;
}

// ---------------------------------------------------------------------------
// Type-I error under optional stopping
// ---------------------------------------------------------------------------

ExperimentResult experiment_type1(std::uint64_t seed, std::size_t reps, std::size_t T, double b,
                                  par::Mode mode) {
    const Distribution p1 = Distribution::bernoulli(0.65);
    const Distribution p0 = Distribution::bernoulli(0.5);
    const double log_b = std::log(b);
    const double inc1 = std::log(p1[1]) - std::log(p0[1]);
    const double inc0 = std::log(p1[0]) - std::log(p0[0]);
    const std::vector<double> tab = xlogx_table(T);
    const double log2 = std::log(2.0);

    std::vector<unsigned char> lr_rejected(reps, 0);
    std::vector<unsigned char> ml_rejected(reps, 0);

    par::for_each_index(reps, mode, [&](std::size_t i) {
        RngStream rng(seed, i);
        double s = 0.0;
        std::size_t ones = 0;
        bool lr_hit = false, ml_hit = false;
        for (std::size_t t = 1; t <= T && !(lr_hit && ml_hit); ++t) {
            const int x = sample_symbol(rng, p0);
            ones += static_cast<std::size_t>(x);
            s += x == 1 ? inc1 : inc0;
            if (!lr_hit && s >= log_b) lr_hit = true;
            if (!ml_hit) {
                const double ml_log = tab[ones] + tab[t - ones] - tab[t] +
                                      static_cast<double>(t) * log2;
                if (ml_log >= log_b) ml_hit = true;
            }
        }
        lr_rejected[i] = lr_hit ? 1 : 0;
        ml_rejected[i] = ml_hit ? 1 : 0;
    });

    std::size_t lr_count = 0, ml_count = 0;
    for (std::size_t i = 0; i < reps; ++i) {
        lr_count += lr_rejected[i];
        ml_count += ml_rejected[i];
    }

    ExperimentResult result;
    result.name = "type1";
    result.reps = reps;
    result.seed = seed;
    const double lr_rate = static_cast<double>(lr_count) / static_cast<double>(reps);
    const double ml_rate = static_cast<double>(ml_count) / static_cast<double>(reps);
    result.metrics["lr_false_rejection_rate"] = lr_rate;
    result.mc_stderr["lr_false_rejection_rate"] = binomial_stderr(lr_rate, reps);
    result.metrics["ml_false_rejection_rate"] = ml_rate;
    result.mc_stderr["ml_false_rejection_rate"] = binomial_stderr(ml_rate, reps);
    result.metrics["threshold_b"] = b;
    result.mc_stderr["threshold_b"] = 0.0;
    result.metrics["ville_bound"] = 1.0 / b;
    result.mc_stderr["ville_bound"] = 0.0;
    return result;
}

// ---------------------------------------------------------------------------
// Misspecification sensitivity
// ---------------------------------------------------------------------------

ExperimentResult experiment_misspec(std::uint64_t seed, std::size_t reps, std::size_t T,
                                    double p_true, double p_alt, double p_null, par::Mode mode) {
    const Distribution pd = Distribution::bernoulli(p_true);
    const Distribution p1 = Distribution::bernoulli(p_alt);
    const Distribution p0 = Distribution::bernoulli(p_null);
    const double b = 20.0;
    const double log_b = std::log(b);
    const double inc1 = std::log(p1[1]) - std::log(p0[1]);
    const double inc0 = std::log(p1[0]) - std::log(p0[0]);

    std::vector<double> slope(reps, 0.0);
    std::vector<unsigned char> at_horizon(reps, 0);
    std::vector<unsigned char> ever(reps, 0);
    const std::size_t stored = std::min(reps, kMaxStoredTrajectories);
    std::vector<std::vector<double>> trajectories(stored);

    par::for_each_index(reps, mode, [&](std::size_t i) {
        RngStream rng(seed, i);
        double s = 0.0;
        bool ever_crossed = false;
        std::vector<double>* traj = i < stored ? &trajectories[i] : nullptr;
        if (traj) traj->reserve(T);
        for (std::size_t t = 1; t <= T; ++t) {
            const int x = sample_symbol(rng, pd);
            s += x == 1 ? inc1 : inc0;
            if (s >= log_b) ever_crossed = true;
            if (traj) traj->push_back(s);
        }
        slope[i] = s / static_cast<double>(T);
        at_horizon[i] = s >= log_b ? 1 : 0;
        ever[i] = ever_crossed ? 1 : 0;
    });

    std::size_t horizon_count = 0, ever_count = 0;
    for (std::size_t i = 0; i < reps; ++i) {
        horizon_count += at_horizon[i];
        ever_count += ever[i];
    }

    ExperimentResult result;
    result.name = "misspec";
    result.reps = reps;
    result.seed = seed;
    result.trajectories = std::move(trajectories);
    const MeanSd slope_stats = mean_sd(slope);
    const double horizon_frac = static_cast<double>(horizon_count) / static_cast<double>(reps);
    const double ever_frac = static_cast<double>(ever_count) / static_cast<double>(reps);
    result.metrics["drift"] = slope_stats.mean;
    result.mc_stderr["drift"] = slope_stats.stderr_of_mean;
    result.metrics["crossings_at_horizon"] = static_cast<double>(horizon_count);
    result.mc_stderr["crossings_at_horizon"] =
        binomial_stderr(horizon_frac, reps) * static_cast<double>(reps);
    result.metrics["ever_crossed_fraction"] = ever_frac;
    result.mc_stderr["ever_crossed_fraction"] = binomial_stderr(ever_frac, reps);
    return result;
}

// ---------------------------------------------------------------------------
// Stopping-time table
// ---------------------------------------------------------------------------

std::vector<StoppingReport> verify_table2(std::uint64_t seed, std::size_t reps, par::Mode mode) {
    const Distribution p1 = Distribution::bernoulli(0.65);
    const Distribution p0 = Distribution::bernoulli(0.5);
    std::vector<StoppingReport> reports;
    for (double b : {10.0, 20.0, 50.0, 100.0, 200.0}) {
        // Same master seed for every threshold: replication i re-walks the
        // identical path, so the columns are coupled (common random numbers)
        // and the residual column is smooth in b.
        reports.push_back(
            simulate_stopping(p1, p1, p0, CrossingConfig(b, 2000), reps, seed, mode));
    }
    return reports;
}

}  // namespace evident
