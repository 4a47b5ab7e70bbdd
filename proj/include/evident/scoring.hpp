#ifndef EVIDENT_SCORING_HPP
#define EVIDENT_SCORING_HPP

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "evident/core.hpp"

namespace evident {

/// Strictly proper scoring rule on a finite alphabet, in nats.
struct ScoringRule {
    enum class Kind { log, brier };

    Kind kind;
    std::string name;
    std::function<double(const Distribution&, int)> score;

    static ScoringRule log_rule();
    static ScoringRule brier_rule();
};

/// Brier score sum_j (q(j) - 1{x=j})^2.
double brier(const Distribution& q, int symbol);

/// Exact one-step expectation sum_x p0(x) exp(S(p0,x) - S(p1,x)) of the
/// scoring-rule-induced evidence factor under p0. Equals 1 for the log rule;
/// strictly below 1 for the Brier rule whenever p1 != p0.
double one_step_evidence_expectation(const ScoringRule& rule, const Distribution& p1,
                                     const Distribution& p0);

/// Expected evidence curve (E_{P0}[E_n])_{n=1..n_max} = r^n with r the
/// one-step expectation; exactly geometric under i.i.d. scoring.
std::vector<double> decay_curve(const ScoringRule& rule, const Distribution& p1,
                                const Distribution& p0, int n_max);

/// CSV with header (n, expected_evidence).
void write_decay_csv(const std::vector<double>& curve, std::ostream& os);

}  // namespace evident

#endif  // EVIDENT_SCORING_HPP
