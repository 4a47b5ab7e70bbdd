#ifndef EVIDENT_EPROCESS_HPP
#define EVIDENT_EPROCESS_HPP

#include <memory>
#include <string>
#include <vector>

#include "evident/core.hpp"
#include "evident/scoring.hpp"

namespace evident {

// ---------------------------------------------------------------------------
// Likelihood-ratio process
// ---------------------------------------------------------------------------

/// Running product of one-step ratios p1(x_t|x^{t-1}) / p0(x_t|x^{t-1}),
/// kept as two separate log-likelihood running sums so that the Bayes-factor
/// and scoring-rule constructions reduce to it bit for bit in degenerate
/// cases. With both kernels full-probability the process is a P0-martingale.
class LikelihoodRatioProcess final : public EvidenceProcess {
public:
    LikelihoodRatioProcess(KernelPtr p1, KernelPtr p0);

    void step(int symbol) override;
    double log_evidence() const override;
    std::size_t step_count() const override { return history_.size(); }
    std::unique_ptr<EvidenceProcess> clone() const override;

    std::span<const int> history() const { return history_; }

private:
    KernelPtr p1_;
    KernelPtr p0_;
    std::vector<int> history_;
    double cum_log_p1_ = 0.0;
    double cum_log_p0_ = 0.0;
    bool dead_ = false;  // a zero-probability symbol under p1 was observed
};

ProcessPtr lr_process(KernelPtr p1, KernelPtr p0);
ProcessPtr lr_process(const Distribution& p1, const Distribution& p0);

/// All-in bettors against a fair coin: evidence doubles on the backed
/// outcome and dies on the other.
ProcessPtr bet_on_heads();
ProcessPtr bet_on_tails();

// ---------------------------------------------------------------------------
// Bayes-factor (mixture) process
// ---------------------------------------------------------------------------

/// Finite discrete prior over i.i.d. models: atoms (distribution, weight)
/// with nonnegative weights summing to 1 within 1e-12.
struct DiscretePrior {
    struct Atom {
        Distribution dist;
        double weight;
    };
    std::vector<Atom> atoms;

    explicit DiscretePrior(std::vector<Atom> atoms);
    static DiscretePrior point(const Distribution& d);
    static DiscretePrior uniform(std::vector<Distribution> dists);
};

/// Evidence M1(x^n)/M0(x^n) of prior-predictive mixtures, accumulated via
/// per-atom cumulative log-likelihoods and streaming log-sum-exp. Atoms are
/// never pruned. Point priors on both sides reduce bit-exactly to
/// lr_process.
class BayesFactorProcess final : public EvidenceProcess {
public:
    BayesFactorProcess(DiscretePrior prior1, DiscretePrior prior0);

    void step(int symbol) override;
    double log_evidence() const override;
    std::size_t step_count() const override { return steps_; }
    std::unique_ptr<EvidenceProcess> clone() const override;

private:
    DiscretePrior prior1_;
    DiscretePrior prior0_;
    std::vector<double> cum_ll1_;  // per-atom cumulative log-likelihoods
    std::vector<double> cum_ll0_;
    std::size_t steps_ = 0;
};

ProcessPtr bayes_factor_process(DiscretePrior prior1, DiscretePrior prior0);

// ---------------------------------------------------------------------------
// Prequential plug-in processes (binary alphabet)
// ---------------------------------------------------------------------------

enum class Smoothing { krichevsky_trofimov, laplace };

/// Smoothed sequential plug-in predictor for binary data:
/// q(1 | x^{t-1}) = (ones + a) / (t - 1 + 2a), a = 1/2 (KT) or 1 (Laplace).
/// Full-probability by construction, so the induced ratio process is a
/// P0-martingale.
class PluginKernel final : public PredictiveKernel {
public:
    explicit PluginKernel(Smoothing smoothing);

    int alphabet_size() const override { return 2; }
    double prob(std::span<const int> history, int symbol) const override;

private:
    double a_;
};

ProcessPtr prequential_process(KernelPtr p0, Smoothing smoothing = Smoothing::krichevsky_trofimov);
ProcessPtr prequential_process(const Distribution& p0,
                               Smoothing smoothing = Smoothing::krichevsky_trofimov);

// ---------------------------------------------------------------------------
// Improper maximum-likelihood plug-in (negative control)
// ---------------------------------------------------------------------------

/// E_t = max_theta theta^k (1-theta)^(t-k) / P0(x^t) with 0^0 = 1. The
/// maximizer sees the current symbol, so this is NOT an E-process; it exists
/// as the negative control for the validity checker and the optional-stopping
/// experiments.
class MlPluginProcess final : public EvidenceProcess {
public:
    explicit MlPluginProcess(KernelPtr p0);

    void step(int symbol) override;
    double log_evidence() const override;
    std::size_t step_count() const override { return history_.size(); }
    std::unique_ptr<EvidenceProcess> clone() const override;

private:
    KernelPtr p0_;
    std::vector<int> history_;
    std::size_t ones_ = 0;
    double cum_log_p0_ = 0.0;
};

ProcessPtr ml_plugin_process(KernelPtr p0);
ProcessPtr ml_plugin_process(const Distribution& p0);

// ---------------------------------------------------------------------------
// Scoring-rule-induced process
// ---------------------------------------------------------------------------

/// Per-step multiplicative factor exp(S(p0, x) - S(p1, x)) under i.i.d.
/// scoring distributions. For the log rule this is the likelihood ratio
/// (bit-for-bit equal to lr_process); for the Brier rule it is a strict
/// supermartingale that decays exponentially under p0.
class ScoringRuleProcess final : public EvidenceProcess {
public:
    ScoringRuleProcess(ScoringRule rule, Distribution p1, Distribution p0);

    void step(int symbol) override;
    double log_evidence() const override;
    std::size_t step_count() const override { return steps_; }
    std::unique_ptr<EvidenceProcess> clone() const override;

private:
    ScoringRule rule_;
    Distribution p1_;
    Distribution p0_;
    double cum_score_p0_ = 0.0;
    double cum_score_p1_ = 0.0;
    std::size_t steps_ = 0;
};

ProcessPtr scoring_rule_process(const ScoringRule& rule, const Distribution& p1,
                                const Distribution& p0);

// ---------------------------------------------------------------------------
// Numerics shared by mixture-style processes
// ---------------------------------------------------------------------------

/// log sum_i exp(v_i), max-shifted. Exact pass-through for a single finite
/// entry; -infinity entries contribute zero mass.
double log_sum_exp(std::span<const double> values);

}  // namespace evident

#endif  // EVIDENT_EPROCESS_HPP
