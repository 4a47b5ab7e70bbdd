#ifndef EVIDENT_ALGEBRA_HPP
#define EVIDENT_ALGEBRA_HPP

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "evident/core.hpp"

namespace evident {

// ---------------------------------------------------------------------------
// Stopping rules
// ---------------------------------------------------------------------------

/// Decides stop/continue from the history and the evidence trajectory only.
/// The rule is consulted after each step (and once at construction) and never
/// sees the next symbol, which enforces predictability structurally.
struct StoppingRule {
    std::string name;
    std::function<bool(std::span<const int> history, std::span<const double> log_trajectory)>
        fires;
};

StoppingRule stop_never();
StoppingRule stop_at_time(std::size_t t);
StoppingRule stop_when_evidence_at_least(double threshold);

// ---------------------------------------------------------------------------
// Closure operations: combinators that preserve validity
// ---------------------------------------------------------------------------

/// sum_i w_i E^(i), weights >= 0 with sum <= 1 + 1e-12 (sub-stochastic
/// weights leave the deficit as lost mass). All children consume the same
/// path. Computed in log domain by log-sum-exp.
ProcessPtr convex_mix(std::vector<ProcessPtr> children, std::vector<double> weights);

/// Convex mixture with weights required to sum to 1: the discrete Bayesian
/// marginalization route.
ProcessPtr bayes_mix(std::vector<ProcessPtr> children, std::vector<double> weights);

/// c * E for c in (0, 1]. Scaling by c > 1 is rejected (the class is not a
/// cone).
ProcessPtr scale(double factor, ProcessPtr inner);

/// Evidence frozen from the first time the rule fires.
ProcessPtr stop(ProcessPtr inner, StoppingRule rule);

/// E^(1) until the rule fires at tau, then E^(1)_tau * E^(2)_{t-tau} with a
/// fresh second process from the factory (which must start at evidence 1).
ProcessPtr stitch(ProcessPtr first, ProcessFactory second_factory, StoppingRule rule);

/// max(a_t, b_t). NOT a valid combinator; exists to drive the counterexample
/// tests and the validity checker's failure path.
ProcessPtr pointwise_max(ProcessPtr a, ProcessPtr b);

// ---------------------------------------------------------------------------
// Brute-force validity certification
// ---------------------------------------------------------------------------

struct ValidityReport {
    std::string combinator;
    int depth = 0;
    double max_expectation = 0.0;        // max over histories of one-step ratio expectation
    std::vector<int> worst_history;
    double initial_evidence = 1.0;       // E at the empty history
    bool pass = false;

    nlohmann::json to_json() const;
};

/// Exhaustively certifies the supermartingale property: for every history h
/// with |h| < depth reachable under p0, computes
/// sum_x p0(x|h) E(h++x) / E(h) and reports the maximum. PASS iff the
/// maximum is <= 1 + 1e-10 and the initial evidence is <= 1 + 1e-10.
/// Depth is capped at 12 (|X|^depth enumeration).
ValidityReport validity_check(const ProcessFactory& make_process, const PredictiveKernel& p0,
                              int depth, const std::string& label = "");

inline constexpr double kValidityTolerance = 1e-10;

}  // namespace evident

#endif  // EVIDENT_ALGEBRA_HPP
