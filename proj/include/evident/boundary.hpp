#ifndef EVIDENT_BOUNDARY_HPP
#define EVIDENT_BOUNDARY_HPP

#include <cstdint>
#include <ostream>
#include <vector>

#include "evident/core.hpp"
#include "evident/parallel.hpp"

namespace evident {

// ---------------------------------------------------------------------------
// Moments of the log-likelihood increment
// ---------------------------------------------------------------------------

/// Exact finite-alphabet mean and variance of Y = log(p1(X)/p0(X)) under p1.
struct IncrementMoments {
    double mu = 0.0;      // nats per observation
    double sigma2 = 0.0;

    double second_moment() const { return sigma2 + mu * mu; }
};

IncrementMoments increment_moments(const Distribution& p1, const Distribution& p0);

// ---------------------------------------------------------------------------
// Threshold crossing
// ---------------------------------------------------------------------------

/// First-passage configuration: crossing is the first t with S_t >= log b
/// (inclusive), censored at horizon_cap.
struct CrossingConfig {
    double threshold_b;
    std::size_t horizon_cap;

    CrossingConfig(double b, std::size_t cap) : threshold_b(b), horizon_cap(cap) {
        if (!(b > 1.0)) throw DomainError("crossing threshold must exceed 1");
        if (cap < 1) throw DomainError("horizon cap must be >= 1");
    }
};

struct Crossing {
    std::size_t tau = 0;   // crossing step, or horizon_cap when censored
    bool censored = false;
    double log_evidence_at_tau = 0.0;  // S_tau (overshoot analysis needs it)
};

/// Scans a materialized path. The path must cover the horizon cap.
Crossing crossing_time(const SamplePath& path, const Distribution& p1, const Distribution& p0,
                       const CrossingConfig& cfg);

// ---------------------------------------------------------------------------
// Stopping-time simulation
// ---------------------------------------------------------------------------

/// Per-replication crossing times with censoring flags and aggregates.
/// Censored replications carry tau = horizon_cap and are excluded from
/// mean/sd; censor_rate reports their fraction. predicted_mean = log(b)/mu
/// and normalized_residual = (mean - predicted_mean)/sqrt(log b).
struct StoppingReport {
    double threshold_b = 0.0;
    std::size_t horizon_cap = 0;
    std::size_t reps = 0;
    std::uint64_t seed = 0;

    std::vector<Crossing> samples;

    double mean = 0.0;
    double sd = 0.0;
    double censor_rate = 0.0;
    double predicted_mean = 0.0;
    double normalized_residual = 0.0;
    double mc_stderr = 0.0;  // sd / sqrt(#uncensored)
};

/// Independent replications of the first-passage time of the cumulative
/// log-likelihood ratio (p1 vs p0) on data drawn from p_data. Replication i
/// draws from the stream (seed, i), so results are identical at any worker
/// count.
StoppingReport simulate_stopping(const Distribution& p_data, const Distribution& p1,
                                 const Distribution& p0, const CrossingConfig& cfg,
                                 std::size_t reps, std::uint64_t seed,
                                 par::Mode mode = par::default_mode());

/// CSV with the columns (b, predicted_mean, mean, sd, censor_rate,
/// normalized_residual).
void write_stopping_csv(std::span<const StoppingReport> reports, std::ostream& os);

// ---------------------------------------------------------------------------
// Analytic boundary quantities
// ---------------------------------------------------------------------------

/// Leading-order detection sample complexity log(1/alpha)/mu.
double sample_complexity(double alpha, double mu);

/// Chernoff-style tail bound exp(-(mu t - log b)^2 / (2 sigma2 t)) on
/// P(tau_b > t), valid for t >= log(b)/mu; clipped to [0, 1].
double detection_tail_bound(std::size_t t, double b, const IncrementMoments& m);

/// Gaussian-tail bound exp(-(log b + |delta| T)^2 / (2 sigma_true^2 T)) on
/// the probability that the misspecified log-LR walk sits at or above log b
/// at horizon T, where delta = kl(p_true, p0) - kl(p_true, p1) must be
/// negative. Note: early excursions of the walk can reach log b with much
/// larger probability than this bound; it controls the horizon-time event,
/// not the running maximum (see the stopping tests for the distinction).
double misspec_crossing_bound(std::size_t T, double b, const Distribution& p_true,
                              const Distribution& p1, const Distribution& p0);

}  // namespace evident

#endif  // EVIDENT_BOUNDARY_HPP
