#include "evident/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "evident/rng.hpp"

namespace evident {

IncrementMoments increment_moments(const Distribution& p1, const Distribution& p0) {
    if (p1.size() != p0.size()) throw DomainError("increment_moments: mismatched alphabets");
    IncrementMoments m;
    for (int x = 0; x < p1.size(); ++x) {
        if (p1[x] == 0.0) continue;
        if (p0[x] == 0.0)
            throw AbsoluteContinuityViolation("increment_moments: p1(x) > 0 where p0(x) = 0");
        m.mu += p1[x] * (std::log(p1[x]) - std::log(p0[x]));
    }
    for (int x = 0; x < p1.size(); ++x) {
        if (p1[x] == 0.0) continue;
        const double y = std::log(p1[x]) - std::log(p0[x]);
        m.sigma2 += p1[x] * (y - m.mu) * (y - m.mu);
    }
    return m;
}

namespace {

// Per-symbol log-likelihood increments, shared by the path scan and the
// streaming simulation so both walk the identical float sequence.
std::vector<double> log_increments(const Distribution& p1, const Distribution& p0) {
    std::vector<double> inc(static_cast<std::size_t>(p1.size()));
    for (int x = 0; x < p1.size(); ++x) {
        if (p1[x] == 0.0)
            inc[static_cast<std::size_t>(x)] = -std::numeric_limits<double>::infinity();
        else if (p0[x] == 0.0)
            inc[static_cast<std::size_t>(x)] = std::numeric_limits<double>::infinity();
        else
            inc[static_cast<std::size_t>(x)] = std::log(p1[x]) - std::log(p0[x]);
    }
    return inc;
}

}  // namespace

Crossing crossing_time(const SamplePath& path, const Distribution& p1, const Distribution& p0,
                       const CrossingConfig& cfg) {
    if (path.symbols.size() < cfg.horizon_cap)
        throw DomainError("crossing_time: path shorter than the horizon cap");
    const std::vector<double> inc = log_increments(p1, p0);
    const double log_b = std::log(cfg.threshold_b);
    double s = 0.0;
    for (std::size_t t = 1; t <= cfg.horizon_cap; ++t) {
        s += inc[static_cast<std::size_t>(path.symbols[t - 1])];
        if (s >= log_b) return {t, false, s};
    }
    return {cfg.horizon_cap, true, s};
}

StoppingReport simulate_stopping(const Distribution& p_data, const Distribution& p1,
                                 const Distribution& p0, const CrossingConfig& cfg,
                                 std::size_t reps, std::uint64_t seed, par::Mode mode) {
    if (reps < 1) throw DomainError("simulate_stopping: reps must be >= 1");

    StoppingReport report;
    report.threshold_b = cfg.threshold_b;
    report.horizon_cap = cfg.horizon_cap;
    report.reps = reps;
    report.seed = seed;
    report.samples.resize(reps);

    const std::vector<double> inc = log_increments(p1, p0);
    const double log_b = std::log(cfg.threshold_b);

    par::for_each_index(reps, mode, [&](std::size_t i) {
        RngStream rng(seed, i);
        double s = 0.0;
        Crossing c{cfg.horizon_cap, true, 0.0};
        for (std::size_t t = 1; t <= cfg.horizon_cap; ++t) {
            const int x = sample_symbol(rng, p_data);
            s += inc[static_cast<std::size_t>(x)];
            if (s >= log_b) {
                c = {t, false, s};
                break;
            }
        }
        if (c.censored) c.log_evidence_at_tau = s;
        report.samples[i] = c;
    });

    // Serial aggregation in replication order with compensated summation, so
    // the report is independent of the worker count.
    std::size_t uncensored = 0;
    double sum = 0.0, comp = 0.0;
    for (const Crossing& c : report.samples) {
        if (c.censored) continue;
        ++uncensored;
        const double y = static_cast<double>(c.tau) - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    report.censor_rate = static_cast<double>(reps - uncensored) / static_cast<double>(reps);
    if (uncensored > 0) {
        report.mean = sum / static_cast<double>(uncensored);
        double ss = 0.0, ss_comp = 0.0;
        for (const Crossing& c : report.samples) {
            if (c.censored) continue;
            const double d = static_cast<double>(c.tau) - report.mean;
            const double y = d * d - ss_comp;
            const double t = ss + y;
            ss_comp = (t - ss) - y;
            ss = t;
        }
        report.sd = uncensored > 1 ? std::sqrt(ss / static_cast<double>(uncensored - 1)) : 0.0;
        report.mc_stderr = report.sd / std::sqrt(static_cast<double>(uncensored));
    }

    const IncrementMoments m = increment_moments(p1, p0);
    report.predicted_mean = log_b / m.mu;
    report.normalized_residual = (report.mean - report.predicted_mean) / std::sqrt(log_b);
    return report;
}

void write_stopping_csv(std::span<const StoppingReport> reports, std::ostream& os) {
    os << "b,predicted_mean,mean,sd,censor_rate,normalized_residual\n";
    os.precision(10);
    for (const StoppingReport& r : reports) {
        os << r.threshold_b << ',' << r.predicted_mean << ',' << r.mean << ',' << r.sd << ','
           << r.censor_rate << ',' << r.normalized_residual << '\n';
    }
}

double sample_complexity(double alpha, double mu) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("sample_complexity: alpha in (0,1)");
    if (!(mu > 0.0)) throw DomainError("sample_complexity: mu must be positive");
    return std::log(1.0 / alpha) / mu;
}

double detection_tail_bound(std::size_t t, double b, const IncrementMoments& m) {
    if (!(b > 1.0)) throw DomainError("detection_tail_bound: b must exceed 1");
    if (!(m.mu > 0.0)) throw DomainError("detection_tail_bound: mu must be positive");
    const double log_b = std::log(b);
    const double td = static_cast<double>(t);
    if (td * m.mu < log_b)
        throw DomainError("detection_tail_bound: t below the detection boundary log(b)/mu");
    const double gap = m.mu * td - log_b;
    if (m.sigma2 == 0.0) return gap == 0.0 ? 1.0 : 0.0;  // deterministic drift limit
    const double bound = std::exp(-(gap * gap) / (2.0 * m.sigma2 * td));
    return std::clamp(bound, 0.0, 1.0);
}

double misspec_crossing_bound(std::size_t T, double b, const Distribution& p_true,
                              const Distribution& p1, const Distribution& p0) {
    if (T < 1) throw DomainError("misspec_crossing_bound: T must be >= 1");
    if (!(b > 1.0)) throw DomainError("misspec_crossing_bound: b must exceed 1");
    const double delta = kl_divergence(p_true, p0) - kl_divergence(p_true, p1);
    if (delta >= 0.0)
        throw DomainError("misspec_crossing_bound: requires negative drift (delta < 0)");

    // Variance of Y = log(p1/p0) under p_true.
    double mean = 0.0;
    for (int x = 0; x < p_true.size(); ++x) {
        if (p_true[x] == 0.0) continue;
        if (p0[x] == 0.0 || p1[x] == 0.0)
            throw AbsoluteContinuityViolation("misspec_crossing_bound: support mismatch");
        mean += p_true[x] * (std::log(p1[x]) - std::log(p0[x]));
    }
    double var = 0.0;
    for (int x = 0; x < p_true.size(); ++x) {
        if (p_true[x] == 0.0) continue;
        const double y = std::log(p1[x]) - std::log(p0[x]);
        var += p_true[x] * (y - mean) * (y - mean);
    }

    const double td = static_cast<double>(T);
    const double z = std::log(b) + std::abs(delta) * td;
    const double bound = std::exp(-(z * z) / (2.0 * var * td));
    return std::clamp(bound, 0.0, 1.0);
}

}  // namespace evident
