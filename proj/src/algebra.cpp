#include "evident/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "evident/eprocess.hpp"

namespace evident {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// Stopping rules
// ---------------------------------------------------------------------------

StoppingRule stop_never() {
    return {"never", [](std::span<const int>, std::span<const double>) { return false; }};
}

StoppingRule stop_at_time(std::size_t t) {
    return {"t=" + std::to_string(t),
            [t](std::span<const int> history, std::span<const double>) {
                return history.size() >= t;
            }};
}

StoppingRule stop_when_evidence_at_least(double threshold) {
    return {"e>=" + std::to_string(threshold),
            [log_b = std::log(threshold)](std::span<const int>,
                                          std::span<const double> log_traj) {
                return !log_traj.empty() && log_traj.back() >= log_b;
            }};
}

// ---------------------------------------------------------------------------
// Convex / Bayesian mixtures
// ---------------------------------------------------------------------------

namespace {

class ConvexMixProcess final : public EvidenceProcess {
public:
    ConvexMixProcess(std::vector<ProcessPtr> children, std::vector<double> weights)
        : children_(std::move(children)), weights_(std::move(weights)) {
        if (children_.empty()) throw DomainError("convex_mix: no children");
        if (children_.size() != weights_.size())
            throw WeightViolation("convex_mix: children/weights size mismatch");
        double sum = 0.0;
        for (double w : weights_) {
            if (w < 0.0) throw WeightViolation("convex_mix: negative weight");
            sum += w;
        }
        if (sum > 1.0 + kProbSumTolerance)
            throw WeightViolation("convex_mix: weights sum to " + std::to_string(sum) + " > 1");
        log_weights_.reserve(weights_.size());
        for (double w : weights_) log_weights_.push_back(w > 0.0 ? std::log(w) : kNegInf);
    }

    ConvexMixProcess(const ConvexMixProcess& other)
        : weights_(other.weights_), log_weights_(other.log_weights_), steps_(other.steps_) {
        children_.reserve(other.children_.size());
        for (const auto& c : other.children_) children_.push_back(c->clone());
    }

    void step(int symbol) override {
        for (auto& c : children_) c->step(symbol);
        ++steps_;
    }

    double log_evidence() const override {
        std::vector<double> terms;
        terms.reserve(children_.size());
        for (std::size_t i = 0; i < children_.size(); ++i)
            terms.push_back(log_weights_[i] + children_[i]->log_evidence());
        return log_sum_exp(terms);
    }

    std::size_t step_count() const override { return steps_; }

    std::unique_ptr<EvidenceProcess> clone() const override {
        return std::make_unique<ConvexMixProcess>(*this);
    }

private:
    std::vector<ProcessPtr> children_;
    std::vector<double> weights_;
    std::vector<double> log_weights_;
    std::size_t steps_ = 0;
};

}  // namespace

ProcessPtr convex_mix(std::vector<ProcessPtr> children, std::vector<double> weights) {
    return std::make_unique<ConvexMixProcess>(std::move(children), std::move(weights));
}

ProcessPtr bayes_mix(std::vector<ProcessPtr> children, std::vector<double> weights) {
    double sum = 0.0;
    for (double w : weights) sum += w;
    if (std::abs(sum - 1.0) > kProbSumTolerance)
        throw WeightViolation("bayes_mix: weights must sum to 1");
    return convex_mix(std::move(children), std::move(weights));
}

// ---------------------------------------------------------------------------
// Scaling
// ---------------------------------------------------------------------------

namespace {

class ScaledProcess final : public EvidenceProcess {
public:
    ScaledProcess(double factor, ProcessPtr inner)
        : log_factor_(std::log(factor)), factor_(factor), inner_(std::move(inner)) {
        if (!(factor > 0.0) || factor > 1.0)
            throw WeightViolation("scale: factor must lie in (0, 1]");
    }

    ScaledProcess(const ScaledProcess& other)
        : log_factor_(other.log_factor_), factor_(other.factor_), inner_(other.inner_->clone()) {}

    void step(int symbol) override { inner_->step(symbol); }
    double log_evidence() const override { return log_factor_ + inner_->log_evidence(); }
    std::size_t step_count() const override { return inner_->step_count(); }
    std::unique_ptr<EvidenceProcess> clone() const override {
        return std::make_unique<ScaledProcess>(*this);
    }

private:
    double log_factor_;
    double factor_;
    ProcessPtr inner_;
};

}  // namespace

ProcessPtr scale(double factor, ProcessPtr inner) {
    return std::make_unique<ScaledProcess>(factor, std::move(inner));
}

// ---------------------------------------------------------------------------
// Stopping
// ---------------------------------------------------------------------------

namespace {

class StoppedProcess final : public EvidenceProcess {
public:
    StoppedProcess(ProcessPtr inner, StoppingRule rule)
        : inner_(std::move(inner)), rule_(std::move(rule)) {
        trajectory_.push_back(inner_->log_evidence());
        frozen_ = rule_.fires(history_, trajectory_);
        if (frozen_) frozen_log_ = trajectory_.back();
    }

    StoppedProcess(const StoppedProcess& other)
        : inner_(other.inner_->clone()),
          rule_(other.rule_),
          history_(other.history_),
          trajectory_(other.trajectory_),
          frozen_(other.frozen_),
          frozen_log_(other.frozen_log_) {}

    void step(int symbol) override {
        history_.push_back(symbol);
        if (frozen_) {
            trajectory_.push_back(frozen_log_);
            return;
        }
        inner_->step(symbol);
        trajectory_.push_back(inner_->log_evidence());
        if (rule_.fires(history_, trajectory_)) {
            frozen_ = true;
            frozen_log_ = trajectory_.back();
        }
    }

    double log_evidence() const override { return frozen_ ? frozen_log_ : inner_->log_evidence(); }
    std::size_t step_count() const override { return history_.size(); }
    std::unique_ptr<EvidenceProcess> clone() const override {
        return std::make_unique<StoppedProcess>(*this);
    }

private:
    ProcessPtr inner_;
    StoppingRule rule_;
    std::vector<int> history_;
    std::vector<double> trajectory_;
    bool frozen_ = false;
    double frozen_log_ = 0.0;
};

}  // namespace

ProcessPtr stop(ProcessPtr inner, StoppingRule rule) {
    return std::make_unique<StoppedProcess>(std::move(inner), std::move(rule));
}

// ---------------------------------------------------------------------------
// Stitching
// ---------------------------------------------------------------------------

namespace {

class StitchProcess final : public EvidenceProcess {
public:
    StitchProcess(ProcessPtr first, ProcessFactory second_factory, StoppingRule rule)
        : first_(std::move(first)), second_factory_(std::move(second_factory)),
          rule_(std::move(rule)) {
        trajectory_.push_back(first_->log_evidence());
        maybe_hand_off();
    }

    StitchProcess(const StitchProcess& other)
        : first_(other.first_->clone()),
          second_(other.second_ ? other.second_->clone() : nullptr),
          second_factory_(other.second_factory_),
          rule_(other.rule_),
          history_(other.history_),
          trajectory_(other.trajectory_),
          log_at_handoff_(other.log_at_handoff_) {}

    void step(int symbol) override {
        history_.push_back(symbol);
        if (second_) {
            second_->step(symbol);
            trajectory_.push_back(log_evidence());
            return;
        }
        first_->step(symbol);
        trajectory_.push_back(first_->log_evidence());
        maybe_hand_off();
    }

    double log_evidence() const override {
        if (second_) return log_at_handoff_ + second_->log_evidence();
        return first_->log_evidence();
    }

    std::size_t step_count() const override { return history_.size(); }
    std::unique_ptr<EvidenceProcess> clone() const override {
        return std::make_unique<StitchProcess>(*this);
    }

private:
    void maybe_hand_off() {
        if (!second_ && rule_.fires(history_, trajectory_)) {
            log_at_handoff_ = first_->log_evidence();
            second_ = second_factory_();
        }
    }

    ProcessPtr first_;
    ProcessPtr second_;
    ProcessFactory second_factory_;
    StoppingRule rule_;
    std::vector<int> history_;
    std::vector<double> trajectory_;
    double log_at_handoff_ = 0.0;
};

}  // namespace

ProcessPtr stitch(ProcessPtr first, ProcessFactory second_factory, StoppingRule rule) {
    return std::make_unique<StitchProcess>(std::move(first), std::move(second_factory),
                                           std::move(rule));
}

// ---------------------------------------------------------------------------
// Pointwise maximum (counterexample combinator)
// ---------------------------------------------------------------------------

namespace {

class PointwiseMaxProcess final : public EvidenceProcess {
public:
    PointwiseMaxProcess(ProcessPtr a, ProcessPtr b) : a_(std::move(a)), b_(std::move(b)) {}

    PointwiseMaxProcess(const PointwiseMaxProcess& other)
        : a_(other.a_->clone()), b_(other.b_->clone()), steps_(other.steps_) {}

    void step(int symbol) override {
        a_->step(symbol);
        b_->step(symbol);
        ++steps_;
    }

    double log_evidence() const override {
        return std::max(a_->log_evidence(), b_->log_evidence());
    }

    std::size_t step_count() const override { return steps_; }
    std::unique_ptr<EvidenceProcess> clone() const override {
        return std::make_unique<PointwiseMaxProcess>(*this);
    }

private:
    ProcessPtr a_;
    ProcessPtr b_;
    std::size_t steps_ = 0;
};

}  // namespace

ProcessPtr pointwise_max(ProcessPtr a, ProcessPtr b) {
    return std::make_unique<PointwiseMaxProcess>(std::move(a), std::move(b));
}

// ---------------------------------------------------------------------------
// Validity checker
// ---------------------------------------------------------------------------

namespace {

struct ValidityScan {
    const PredictiveKernel& p0;
    int depth;
    double max_expectation = kNegInf;
    std::vector<int> worst_history;

    void visit(const EvidenceProcess& proc, std::vector<int>& history) {
        const double log_e = proc.log_evidence();
        const int n = p0.alphabet_size();

        std::vector<ProcessPtr> children(static_cast<std::size_t>(n));
        double expectation = 0.0;
        bool zero_parent_violated = false;
        for (int x = 0; x < n; ++x) {
            const double p0x = p0.prob(history, x);
            if (p0x == 0.0) continue;  // unreachable under the null
            auto child = proc.clone();
            child->step(x);
            const double child_log = child->log_evidence();
            if (log_e == kNegInf) {
                if (child_log != kNegInf) zero_parent_violated = true;
            } else {
                expectation += p0x * std::exp(child_log - log_e);
            }
            children[static_cast<std::size_t>(x)] = std::move(child);
        }
        if (log_e == kNegInf) expectation = zero_parent_violated ? kPosInf : 0.0;

        if (expectation > max_expectation) {
            max_expectation = expectation;
            worst_history = history;
        }

        if (static_cast<int>(history.size()) + 1 < depth) {
            for (int x = 0; x < n; ++x) {
                if (!children[static_cast<std::size_t>(x)]) continue;
                history.push_back(x);
                visit(*children[static_cast<std::size_t>(x)], history);
                history.pop_back();
            }
        }
    }
};

}  // namespace

ValidityReport validity_check(const ProcessFactory& make_process, const PredictiveKernel& p0,
                              int depth, const std::string& label) {
    if (depth < 1 || depth > 12)
        throw DepthTooLarge("validity_check: depth must lie in 1..12, got " +
                            std::to_string(depth));

    ValidityReport report;
    report.combinator = label;
    report.depth = depth;

    auto root = make_process();
    report.initial_evidence = root->evidence();

    ValidityScan scan{p0, depth, -std::numeric_limits<double>::infinity(), {}};
    std::vector<int> history;
    scan.visit(*root, history);

    report.max_expectation = scan.max_expectation;
    report.worst_history = scan.worst_history;
    report.pass = report.max_expectation <= 1.0 + kValidityTolerance &&
                  report.initial_evidence <= 1.0 + kValidityTolerance;
    return report;
}

nlohmann::json ValidityReport::to_json() const {
    return {
        {"combinator", combinator},
        {"depth", depth},
        {"max_expectation", max_expectation},
        {"worst_history", worst_history},
        {"initial_evidence", initial_evidence},
        {"pass", pass},
    };
}

}  // namespace evident
