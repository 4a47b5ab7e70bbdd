#include "evident/eprocess.hpp"

#include <algorithm>
#include <cmath>

namespace evident {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double log_sum_exp(std::span<const double> values) {
    double m = kNegInf;
    for (double v : values) m = std::max(m, v);
    if (m == kNegInf) return kNegInf;
    double sum = 0.0;
    for (double v : values) sum += std::exp(v - m);
    return m + std::log(sum);
}

// ---------------------------------------------------------------------------
// LikelihoodRatioProcess
// ---------------------------------------------------------------------------

LikelihoodRatioProcess::LikelihoodRatioProcess(KernelPtr p1, KernelPtr p0)
    : p1_(std::move(p1)), p0_(std::move(p0)) {
    if (!p1_ || !p0_) throw DomainError("lr_process: null kernel");
    if (p1_->alphabet_size() != p0_->alphabet_size())
        throw DomainError("lr_process: mismatched alphabets");
}

void LikelihoodRatioProcess::step(int symbol) {
    if (symbol < 0 || symbol >= p0_->alphabet_size())
        throw DomainError("lr_process: symbol outside alphabet");
    if (dead_) {
        history_.push_back(symbol);
        return;
    }
    const double p1v = p1_->prob(history_, symbol);
    const double p0v = p0_->prob(history_, symbol);
    if (p0v == 0.0 && p1v > 0.0)
        throw AbsoluteContinuityViolation("lr_process: p0(x|h) = 0 < p1(x|h)");
    if (p1v == 0.0) {
        dead_ = true;
    } else {
        cum_log_p1_ += std::log(p1v);
        cum_log_p0_ += std::log(p0v);
    }
    history_.push_back(symbol);
}

double LikelihoodRatioProcess::log_evidence() const {
    if (dead_) return kNegInf;
    return cum_log_p1_ - cum_log_p0_;
}

std::unique_ptr<EvidenceProcess> LikelihoodRatioProcess::clone() const {
    return std::make_unique<LikelihoodRatioProcess>(*this);
}

ProcessPtr lr_process(KernelPtr p1, KernelPtr p0) {
    return std::make_unique<LikelihoodRatioProcess>(std::move(p1), std::move(p0));
}

ProcessPtr lr_process(const Distribution& p1, const Distribution& p0) {
    return lr_process(iid_kernel(p1), iid_kernel(p0));
}

ProcessPtr bet_on_heads() {
    return lr_process(Distribution::bernoulli(1.0), Distribution::bernoulli(0.5));
}

ProcessPtr bet_on_tails() {
    return lr_process(Distribution::bernoulli(0.0), Distribution::bernoulli(0.5));
}

// ---------------------------------------------------------------------------
// BayesFactorProcess
// ---------------------------------------------------------------------------

DiscretePrior::DiscretePrior(std::vector<Atom> atoms_in) : atoms(std::move(atoms_in)) {
    if (atoms.empty()) throw DomainError("prior needs at least one atom");
    double sum = 0.0;
    const int n = atoms.front().dist.size();
    for (const Atom& a : atoms) {
        if (a.weight < 0.0) throw WeightViolation("prior weight < 0");
        if (a.dist.size() != n) throw DomainError("prior atoms on mismatched alphabets");
        sum += a.weight;
    }
    if (std::abs(sum - 1.0) > kProbSumTolerance)
        throw WeightViolation("prior weights sum to " + std::to_string(sum));
}

DiscretePrior DiscretePrior::point(const Distribution& d) {
    return DiscretePrior({{d, 1.0}});
}

DiscretePrior DiscretePrior::uniform(std::vector<Distribution> dists) {
    std::vector<Atom> atoms;
    const double w = 1.0 / static_cast<double>(dists.size());
    atoms.reserve(dists.size());
    for (Distribution& d : dists) atoms.push_back({std::move(d), w});
    return DiscretePrior(std::move(atoms));
}

BayesFactorProcess::BayesFactorProcess(DiscretePrior prior1, DiscretePrior prior0)
    : prior1_(std::move(prior1)), prior0_(std::move(prior0)) {
    if (prior1_.atoms.front().dist.size() != prior0_.atoms.front().dist.size())
        throw DomainError("bayes_factor_process: mismatched alphabets");
    for (const auto& a : prior1_.atoms)
        cum_ll1_.push_back(a.weight > 0.0 ? std::log(a.weight) : kNegInf);
    for (const auto& a : prior0_.atoms)
        cum_ll0_.push_back(a.weight > 0.0 ? std::log(a.weight) : kNegInf);
}

void BayesFactorProcess::step(int symbol) {
    const int n = prior0_.atoms.front().dist.size();
    if (symbol < 0 || symbol >= n) throw DomainError("bayes_factor_process: symbol out of range");
    for (std::size_t k = 0; k < prior1_.atoms.size(); ++k) {
        const double p = prior1_.atoms[k].dist[symbol];
        cum_ll1_[k] += (p == 0.0) ? kNegInf : std::log(p);
    }
    for (std::size_t k = 0; k < prior0_.atoms.size(); ++k) {
        const double p = prior0_.atoms[k].dist[symbol];
        cum_ll0_[k] += (p == 0.0) ? kNegInf : std::log(p);
    }
    ++steps_;
    if (log_sum_exp(cum_ll0_) == kNegInf && log_sum_exp(cum_ll1_) != kNegInf)
        throw AbsoluteContinuityViolation(
            "bayes_factor_process: null mixture mass 0 on observed path");
}

double BayesFactorProcess::log_evidence() const {
    const double l1 = log_sum_exp(cum_ll1_);
    const double l0 = log_sum_exp(cum_ll0_);
    if (l1 == kNegInf) return kNegInf;  // alternative mixture died
    return l1 - l0;
}

std::unique_ptr<EvidenceProcess> BayesFactorProcess::clone() const {
    return std::make_unique<BayesFactorProcess>(*this);
}

ProcessPtr bayes_factor_process(DiscretePrior prior1, DiscretePrior prior0) {
    return std::make_unique<BayesFactorProcess>(std::move(prior1), std::move(prior0));
}

// ---------------------------------------------------------------------------
// PluginKernel / prequential_process
// ---------------------------------------------------------------------------

PluginKernel::PluginKernel(Smoothing smoothing)
    : a_(smoothing == Smoothing::krichevsky_trofimov ? 0.5 : 1.0) {}

double PluginKernel::prob(std::span<const int> history, int symbol) const {
    if (symbol < 0 || symbol > 1) throw DomainError("plugin kernel is binary");
    std::size_t ones = 0;
    for (int x : history) {
        if (x != 0 && x != 1) throw DomainError("plugin kernel is binary");
        ones += static_cast<std::size_t>(x);
    }
    const double t = static_cast<double>(history.size());
    const double k = static_cast<double>(ones);
    const double q1 = (k + a_) / (t + 2.0 * a_);
    return symbol == 1 ? q1 : 1.0 - q1;
}

ProcessPtr prequential_process(KernelPtr p0, Smoothing smoothing) {
    if (p0->alphabet_size() != 2) throw DomainError("prequential_process: binary alphabet only");
    return lr_process(std::make_shared<PluginKernel>(smoothing), std::move(p0));
}

ProcessPtr prequential_process(const Distribution& p0, Smoothing smoothing) {
    return prequential_process(iid_kernel(p0), smoothing);
}

// ---------------------------------------------------------------------------
// MlPluginProcess
// ---------------------------------------------------------------------------

namespace {
double xlogx(double v) { return v == 0.0 ? 0.0 : v * std::log(v); }
}

MlPluginProcess::MlPluginProcess(KernelPtr p0) : p0_(std::move(p0)) {
    if (p0_->alphabet_size() != 2) throw DomainError("ml_plugin_process: binary alphabet only");
}

void MlPluginProcess::step(int symbol) {
    if (symbol != 0 && symbol != 1) throw DomainError("ml_plugin_process: binary alphabet only");
    const double p0v = p0_->prob(history_, symbol);
    if (p0v == 0.0)
        throw AbsoluteContinuityViolation("ml_plugin_process: p0(x|h) = 0 on observed symbol");
    cum_log_p0_ += std::log(p0v);
    ones_ += static_cast<std::size_t>(symbol);
    history_.push_back(symbol);
}

double MlPluginProcess::log_evidence() const {
    const double t = static_cast<double>(history_.size());
    if (t == 0.0) return 0.0;
    const double k = static_cast<double>(ones_);
    // log max_theta theta^k (1-theta)^(t-k) = k log(k/t) + (t-k) log((t-k)/t)
    const double log_ml = xlogx(k) + xlogx(t - k) - t * std::log(t);
    return log_ml - cum_log_p0_;
}

std::unique_ptr<EvidenceProcess> MlPluginProcess::clone() const {
    return std::make_unique<MlPluginProcess>(*this);
}

ProcessPtr ml_plugin_process(KernelPtr p0) {
    return std::make_unique<MlPluginProcess>(std::move(p0));
}

ProcessPtr ml_plugin_process(const Distribution& p0) { return ml_plugin_process(iid_kernel(p0)); }

// ---------------------------------------------------------------------------
// ScoringRuleProcess
// ---------------------------------------------------------------------------

ScoringRuleProcess::ScoringRuleProcess(ScoringRule rule, Distribution p1, Distribution p0)
    : rule_(std::move(rule)), p1_(std::move(p1)), p0_(std::move(p0)) {
    if (p1_.size() != p0_.size()) throw DomainError("scoring_rule_process: mismatched alphabets");
}

void ScoringRuleProcess::step(int symbol) {
    cum_score_p0_ += rule_.score(p0_, symbol);
    cum_score_p1_ += rule_.score(p1_, symbol);
    ++steps_;
}

double ScoringRuleProcess::log_evidence() const {
    if (std::isinf(cum_score_p1_)) return kNegInf;  // p1 scored an impossible symbol
    return cum_score_p0_ - cum_score_p1_;
}

std::unique_ptr<EvidenceProcess> ScoringRuleProcess::clone() const {
    return std::make_unique<ScoringRuleProcess>(*this);
}

ProcessPtr scoring_rule_process(const ScoringRule& rule, const Distribution& p1,
                                const Distribution& p0) {
    return std::make_unique<ScoringRuleProcess>(rule, p1, p0);
}

}  // namespace evident
