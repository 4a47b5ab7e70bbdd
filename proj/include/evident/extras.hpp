#ifndef EVIDENT_EXTRAS_HPP
#define EVIDENT_EXTRAS_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "evident/core.hpp"

namespace evident {

// ---------------------------------------------------------------------------
// Conformal e-prediction under exchangeability
// ---------------------------------------------------------------------------

using Example = double;

/// Permutation-equivariant nonconformity measure: consumes an unordered bag
/// (the other examples) and the candidate, returns a nonnegative score.
struct NonconformityScorer {
    std::string name;
    std::function<double(std::span<const Example> bag, Example candidate)> score;
};

/// |candidate - mean(bag)|.
NonconformityScorer distance_to_bag_mean();

/// |candidate - median(bag)|; bounded influence, so a single extreme
/// candidate dominates the score sum and its e-value approaches n + 1.
NonconformityScorer distance_to_bag_median();

/// Constant positive score; every example is equally (non)conforming.
NonconformityScorer constant_score(double value = 1.0);

struct ConformalResult {
    double e_value = 0.0;
    std::size_t n = 0;        // calibration size
    bool all_zero_flag = false;

    nlohmann::json to_json() const;
};

/// Ratio-to-mean conformal e-value (n+1) A_test / sum_i A_i, where A_i is
/// the nonconformity of example i against the bag of the others. When all
/// scores are zero the e-value is 0 (conservative) and the flag is set.
ConformalResult conformal_e_value(const NonconformityScorer& scorer,
                                  std::span<const Example> calibration, Example test);

// ---------------------------------------------------------------------------
// PAC-Bayes / Donsker-Varadhan bridge
// ---------------------------------------------------------------------------

/// Finite hypothesis grid of i.i.d. models with a prior, a null, and a path.
struct PacBayesInstance {
    std::vector<Distribution> theta_grid;
    std::vector<double> prior;   // nonneg, sums to 1
    Distribution null_dist;
    SamplePath path;
};

struct PacBayesReport {
    double lhs = 0.0;   // log mixture evidence log E_n^pi
    double rhs = 0.0;   // posterior-averaged log ratio minus KL(rho || pi)
    double gap = 0.0;   // lhs - rhs, >= 0 by the variational inequality
    bool pass = false;  // gap >= -1e-10

    nlohmann::json to_json() const;
};

/// Checks the variational inequality
/// log E^pi_n >= E_rho[log(p_theta(x^n)/p0(x^n))] - KL(rho || pi)
/// for the given posterior weights on the grid.
PacBayesReport pac_bayes_check(const PacBayesInstance& instance,
                               std::span<const double> posterior);

/// Cumulative per-hypothesis log ratios log(p_theta(x^n)/p0(x^n)); the
/// building block shared by the check and by posterior-selection rules.
std::vector<double> cumulative_log_ratios(const PacBayesInstance& instance);

/// KL(rho || pi) over a finite grid, +infinity when rho puts mass where pi
/// has none.
double discrete_kl(std::span<const double> rho, std::span<const double> pi);

}  // namespace evident

#endif  // EVIDENT_EXTRAS_HPP
