#ifndef EVIDENT_CODES_HPP
#define EVIDENT_CODES_HPP

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include <json.hpp>

#include "evident/core.hpp"
#include "evident/rational.hpp"

namespace evident {

// ---------------------------------------------------------------------------
// Bernoulli NML, in exact rationals
// ---------------------------------------------------------------------------

/// Exact normalizer C_n = sum_k binom(n,k) (k/n)^k ((n-k)/n)^(n-k) with the
/// 0^0 = 1 convention. Budget: n <= 30.
Rational nml_normalizer(int n);

/// Exact NML probability of a binary string at horizon n = |x^n|.
Rational nml_probability(std::span<const int> sequence);

/// Horizon-N conditional q_t^{(N)}(x | history): the marginal of the
/// horizon-N NML distribution over all completions, by exhaustive
/// enumeration in exact rationals (count-collapsed: 2^N terms reduce to N+1
/// binomial groups). Requires |history| = t-1, t <= N <= 16.
Rational nml_horizon_conditional_exact(int N, int t, std::span<const int> history, int symbol);
double nml_horizon_conditional(int N, int t, std::span<const int> history, int symbol);

// ---------------------------------------------------------------------------
// Code-length families on binary prefixes
// ---------------------------------------------------------------------------

/// Per-horizon code-length assignments on all binary prefixes up to a depth,
/// carried as exact rational masses m(prefix) = exp(-l(prefix)) with
/// l(empty) = 0. Lengths in nats are a float view of the same data.
class CodeLengthFamily {
public:
    /// Prequential plug-in code: m(x^t) = prod_s q_s(x_s | x^{s-1}) for the
    /// smoothed binary predictor with parameter a (1/2 = KT, 1 = Laplace).
    static CodeLengthFamily prequential(int max_depth, const Rational& smoothing_a);
    static CodeLengthFamily prequential_kt(int max_depth);
    static CodeLengthFamily prequential_laplace(int max_depth);

    /// The NML-sequence code: at each t the horizon-t NML code,
    /// l_t(x^t) = -log P_nml^(t)(x^t). Its induced one-step factors exceed
    /// unit mass, which the liftability check detects.
    static CodeLengthFamily nml_sequence(int max_depth);

    /// Code derived from a probability measure: m(prefix) = Q(prefix), given
    /// the joint marginal Q on prefixes.
    static CodeLengthFamily from_measure(
        const std::function<Rational(std::span<const int>)>& joint, int max_depth);

    /// i.i.d. Bernoulli measure with rational success probability.
    static CodeLengthFamily iid_measure(const Rational& prob_one, int max_depth);

    int max_depth() const { return max_depth_; }

    /// Code length in nats; throws MissingPrefix outside the stored depth.
    double length(std::span<const int> prefix) const;

    /// Exact mass exp(-l(prefix)).
    const Rational& mass(std::span<const int> prefix) const;

private:
    CodeLengthFamily(int max_depth, std::map<std::vector<int>, Rational> masses)
        : max_depth_(max_depth), masses_(std::move(masses)) {}

    static void check_depth_budget(int max_depth);

    int max_depth_;
    std::map<std::vector<int>, Rational> masses_;
};

// ---------------------------------------------------------------------------
// Sequential liftability
// ---------------------------------------------------------------------------

struct LiftabilityViolation {
    std::vector<int> prefix;
    Rational mass;  // sum_x exp(-l(prefix++x) + l(prefix)), exceeding 1
};

struct LiftabilityReport {
    int depth = 0;
    bool pass = false;
    std::vector<LiftabilityViolation> violations;

    nlohmann::json to_json() const;
};

/// For every prefix h with |h| < depth, computes the induced one-step factor
/// mass m(h) = sum_x exp(-l(h++x) + l(h)) in exact rationals; PASS iff
/// m(h) <= 1 everywhere (the float tolerance 1e-10 never triggers on the
/// exact path). Violations report the offending prefix and exact mass.
LiftabilityReport liftability_check(const CodeLengthFamily& family, int depth);

// ---------------------------------------------------------------------------
// Code-to-evidence conversion
// ---------------------------------------------------------------------------

/// E_t = exp(-l(X^t)) / P0(X^t). Validity is NOT asserted here: run
/// liftability_check or validity_check first. Throws MissingPrefix when the
/// fed path leaves the family's stored depth.
ProcessPtr code_to_e(std::shared_ptr<const CodeLengthFamily> family, KernelPtr p0);
ProcessPtr code_to_e(const CodeLengthFamily& family, const Distribution& p0);

}  // namespace evident

#endif  // EVIDENT_CODES_HPP
