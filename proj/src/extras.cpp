#include "evident/extras.hpp"

#include <algorithm>
#include <cmath>

#include "evident/eprocess.hpp"

namespace evident {

NonconformityScorer distance_to_bag_mean() {
    return {"distance_to_bag_mean", [](std::span<const Example> bag, Example candidate) {
                if (bag.empty()) return std::abs(candidate);
                double sum = 0.0;
                for (Example e : bag) sum += e;
                return std::abs(candidate - sum / static_cast<double>(bag.size()));
            }};
}

NonconformityScorer distance_to_bag_median() {
    return {"distance_to_bag_median", [](std::span<const Example> bag, Example candidate) {
                if (bag.empty()) return std::abs(candidate);
                std::vector<Example> sorted(bag.begin(), bag.end());
                std::sort(sorted.begin(), sorted.end());
                const std::size_t n = sorted.size();
                const double median =
                    n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
                return std::abs(candidate - median);
            }};
}

NonconformityScorer constant_score(double value) {
    return {"constant", [value](std::span<const Example>, Example) { return value; }};
}

ConformalResult conformal_e_value(const NonconformityScorer& scorer,
                                  std::span<const Example> calibration, Example test) {
    if (calibration.empty()) throw EmptyCalibration("conformal_e_value: empty calibration set");

    const std::size_t n = calibration.size();
    std::vector<Example> pool(calibration.begin(), calibration.end());
    pool.push_back(test);

    // A_i: nonconformity of example i against the bag of the others.
    std::vector<Example> bag(n);
    std::vector<double> scores(n + 1);
    double total = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        std::size_t k = 0;
        for (std::size_t j = 0; j <= n; ++j) {
            if (j == i) continue;
            bag[k++] = pool[j];
        }
        const double a = scorer.score(bag, pool[i]);
        if (a < 0.0) throw DomainError("nonconformity scores must be nonnegative");
        scores[i] = a;
        total += a;
    }

    ConformalResult result;
    result.n = n;
    if (total == 0.0) {
        result.all_zero_flag = true;
        result.e_value = 0.0;  // conservative
        return result;
    }
    result.e_value = static_cast<double>(n + 1) * scores[n] / total;
    return result;
}

nlohmann::json ConformalResult::to_json() const {
    return {{"e_value", e_value}, {"n", n}, {"flag", all_zero_flag}};
}

// ---------------------------------------------------------------------------
// PAC-Bayes
// ---------------------------------------------------------------------------

std::vector<double> cumulative_log_ratios(const PacBayesInstance& instance) {
    std::vector<double> log_ratio(instance.theta_grid.size(), 0.0);
    for (std::size_t k = 0; k < instance.theta_grid.size(); ++k) {
        const Distribution& p_theta = instance.theta_grid[k];
        double cum_theta = 0.0, cum_null = 0.0;
        for (int x : instance.path.symbols) {
            const double pt = p_theta[x];
            const double p0 = instance.null_dist[x];
            if (p0 == 0.0)
                throw AbsoluteContinuityViolation("pac_bayes: null assigns 0 to observed symbol");
            cum_theta += pt == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(pt);
            cum_null += std::log(p0);
        }
        log_ratio[k] = cum_theta - cum_null;
    }
    return log_ratio;
}

double discrete_kl(std::span<const double> rho, std::span<const double> pi) {
    if (rho.size() != pi.size()) throw DomainError("discrete_kl: size mismatch");
    double kl = 0.0;
    for (std::size_t k = 0; k < rho.size(); ++k) {
        if (rho[k] == 0.0) continue;
        if (pi[k] == 0.0) return std::numeric_limits<double>::infinity();
        kl += rho[k] * std::log(rho[k] / pi[k]);
    }
    return std::max(kl, 0.0);
}

PacBayesReport pac_bayes_check(const PacBayesInstance& instance,
                               std::span<const double> posterior) {
    if (instance.theta_grid.empty()) throw DomainError("pac_bayes_check: empty grid");
    if (instance.prior.size() != instance.theta_grid.size() ||
        posterior.size() != instance.theta_grid.size())
        throw DomainError("pac_bayes_check: weight/grid size mismatch");
    double prior_sum = 0.0, post_sum = 0.0;
    for (std::size_t k = 0; k < posterior.size(); ++k) {
        if (instance.prior[k] < 0.0 || posterior[k] < 0.0)
            throw WeightViolation("pac_bayes_check: negative weight");
        prior_sum += instance.prior[k];
        post_sum += posterior[k];
    }
    if (std::abs(prior_sum - 1.0) > kProbSumTolerance ||
        std::abs(post_sum - 1.0) > kProbSumTolerance)
        throw WeightViolation("pac_bayes_check: weights must sum to 1");

    const std::vector<double> log_ratio = cumulative_log_ratios(instance);

    // lhs = log sum_k pi(k) exp(log_ratio_k)
    std::vector<double> terms(log_ratio.size());
    for (std::size_t k = 0; k < log_ratio.size(); ++k)
        terms[k] = (instance.prior[k] > 0.0 ? std::log(instance.prior[k])
                                            : -std::numeric_limits<double>::infinity()) +
                   log_ratio[k];
    PacBayesReport report;
    report.lhs = log_sum_exp(terms);

    double avg = 0.0;
    for (std::size_t k = 0; k < log_ratio.size(); ++k) {
        if (posterior[k] == 0.0) continue;
        avg += posterior[k] * log_ratio[k];
    }
    report.rhs = avg - discrete_kl(posterior, instance.prior);
    report.gap = report.lhs - report.rhs;
    report.pass = report.gap >= -1e-10;
    return report;
}

nlohmann::json PacBayesReport::to_json() const {
    return {{"lhs", lhs}, {"rhs", rhs}, {"gap", gap}, {"pass", pass}};
}

}  // namespace evident
