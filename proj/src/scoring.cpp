#include "evident/scoring.hpp"

#include <cmath>

namespace evident {

ScoringRule ScoringRule::log_rule() {
    return {Kind::log, "log", [](const Distribution& q, int x) { return log_score(q, x); }};
}

ScoringRule ScoringRule::brier_rule() {
    return {Kind::brier, "brier", [](const Distribution& q, int x) { return brier(q, x); }};
}

double brier(const Distribution& q, int symbol) {
    if (symbol < 0 || symbol >= q.size()) throw DomainError("brier: symbol outside alphabet");
    double s = 0.0;
    for (int j = 0; j < q.size(); ++j) {
        const double d = q[j] - (j == symbol ? 1.0 : 0.0);
        s += d * d;
    }
    return s;
}

double one_step_evidence_expectation(const ScoringRule& rule, const Distribution& p1,
                                     const Distribution& p0) {
    if (p1.size() != p0.size())
        throw DomainError("one_step_evidence_expectation: mismatched alphabets");
    double e = 0.0;
    for (int x = 0; x < p0.size(); ++x) {
        if (p0[x] == 0.0) continue;
        e += p0[x] * std::exp(rule.score(p0, x) - rule.score(p1, x));
    }
    return e;
}

std::vector<double> decay_curve(const ScoringRule& rule, const Distribution& p1,
                                const Distribution& p0, int n_max) {
    if (n_max < 1) throw DomainError("decay_curve: n_max must be >= 1");
    const double r = one_step_evidence_expectation(rule, p1, p0);
    std::vector<double> curve;
    curve.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) curve.push_back(std::pow(r, n));
    return curve;
}

void write_decay_csv(const std::vector<double>& curve, std::ostream& os) {
    os << "n,expected_evidence\n";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        os << (i + 1) << ",";
        os.precision(17);
        os << curve[i] << "\n";
    }
}

}  // namespace evident
