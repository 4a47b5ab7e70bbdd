#include "evident/codes.hpp"

#include <cmath>

namespace evident {

namespace {

// m^m (n-m)^{n-m}, the unnormalized NML weight of a count-m sequence; 0^0 = 1.
mpz_class ml_weight(unsigned long m, unsigned long n) {
    mpz_class a, b;
    mpz_ui_pow_ui(a.get_mpz_t(), m, m);
    mpz_ui_pow_ui(b.get_mpz_t(), n - m, n - m);
    return a * b;
}

mpz_class binom(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// sum over completions of a (length, ones)-prefix of the horizon-N NML
// numerators: sum_j binom(N-length, j) * ml_weight(ones+j, N).
mpz_class nml_marginal_numerator(int N, int length, int ones) {
    mpz_class sum = 0;
    const int rest = N - length;
    for (int j = 0; j <= rest; ++j)
        sum += binom(static_cast<unsigned long>(rest), static_cast<unsigned long>(j)) *
               ml_weight(static_cast<unsigned long>(ones + j), static_cast<unsigned long>(N));
    return sum;
}

int count_ones(std::span<const int> seq) {
    int k = 0;
    for (int x : seq) {
        if (x != 0 && x != 1) throw DomainError("binary sequence expected");
        k += x;
    }
    return k;
}

}  // namespace

Rational nml_normalizer(int n) {
    if (n < 1) throw DomainError("nml_normalizer: n must be >= 1");
    if (n > 30) throw BudgetExceeded("nml_normalizer: exact arithmetic budget is n <= 30");
    mpz_class num = 0;
    for (int k = 0; k <= n; ++k)
        num += binom(static_cast<unsigned long>(n), static_cast<unsigned long>(k)) *
               ml_weight(static_cast<unsigned long>(k), static_cast<unsigned long>(n));
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(n));
    return Rational::from_integers(num, den);
}

Rational nml_probability(std::span<const int> sequence) {
    const int n = static_cast<int>(sequence.size());
    if (n < 1) throw DomainError("nml_probability: empty sequence");
    if (n > 30) throw BudgetExceeded("nml_probability: exact arithmetic budget is n <= 30");
    const int k = count_ones(sequence);
    // theta_hat^k (1-theta_hat)^{n-k} / C_n = ml_weight(k, n) / sum_j ...
    mpz_class den = 0;
    for (int j = 0; j <= n; ++j)
        den += binom(static_cast<unsigned long>(n), static_cast<unsigned long>(j)) *
               ml_weight(static_cast<unsigned long>(j), static_cast<unsigned long>(n));
    return Rational::from_integers(ml_weight(static_cast<unsigned long>(k),
                                             static_cast<unsigned long>(n)),
                                   den);
}

Rational nml_horizon_conditional_exact(int N, int t, std::span<const int> history, int symbol) {
    if (N > 16) throw BudgetExceeded("nml_horizon_conditional: budget is N <= 16");
    if (t < 1 || t > N) throw DomainError("nml_horizon_conditional: need 1 <= t <= N");
    if (static_cast<int>(history.size()) != t - 1)
        throw DomainError("nml_horizon_conditional: |history| must equal t - 1");
    if (symbol != 0 && symbol != 1) throw DomainError("nml_horizon_conditional: binary symbol");
    const int k = count_ones(history);
    const mpz_class num = nml_marginal_numerator(N, t, k + symbol);
    const mpz_class den = nml_marginal_numerator(N, t - 1, k);
    return Rational::from_integers(num, den);
}

double nml_horizon_conditional(int N, int t, std::span<const int> history, int symbol) {
    return nml_horizon_conditional_exact(N, t, history, symbol).to_double();
}

// ---------------------------------------------------------------------------
// CodeLengthFamily
// ---------------------------------------------------------------------------

void CodeLengthFamily::check_depth_budget(int max_depth) {
    if (max_depth < 1) throw DomainError("code family: max_depth must be >= 1");
    if (max_depth > 16)
        throw BudgetExceeded("code family: 2^depth enumeration budget is depth <= 16");
}

CodeLengthFamily CodeLengthFamily::prequential(int max_depth, const Rational& smoothing_a) {
    check_depth_budget(max_depth);
    std::map<std::vector<int>, Rational> masses;
    const Rational one(1);
    const Rational two_a = smoothing_a + smoothing_a;

    // DFS over the binary prefix tree, extending the product of plug-in
    // conditionals q(1|x^{t-1}) = (ones + a) / (t - 1 + 2a).
    std::vector<int> prefix;
    std::function<void(const Rational&, int)> grow = [&](const Rational& mass, int ones) {
        masses.emplace(prefix, mass);
        const int t = static_cast<int>(prefix.size());
        if (t == max_depth) return;
        const Rational q1 = (Rational(ones) + smoothing_a) / (Rational(t) + two_a);
        for (int x = 0; x <= 1; ++x) {
            prefix.push_back(x);
            grow(mass * (x == 1 ? q1 : one - q1), ones + x);
            prefix.pop_back();
        }
    };
    grow(one, 0);
    return CodeLengthFamily(max_depth, std::move(masses));
}

CodeLengthFamily CodeLengthFamily::prequential_kt(int max_depth) {
    return prequential(max_depth, Rational(1, 2));
}

CodeLengthFamily CodeLengthFamily::prequential_laplace(int max_depth) {
    return prequential(max_depth, Rational(1));
}

CodeLengthFamily CodeLengthFamily::nml_sequence(int max_depth) {
    check_depth_budget(max_depth);
    std::map<std::vector<int>, Rational> masses;
    std::vector<int> prefix;
    std::function<void()> grow = [&]() {
        masses.emplace(prefix, prefix.empty() ? Rational(1) : nml_probability(prefix));
        if (static_cast<int>(prefix.size()) == max_depth) return;
        for (int x = 0; x <= 1; ++x) {
            prefix.push_back(x);
            grow();
            prefix.pop_back();
        }
    };
    grow();
    return CodeLengthFamily(max_depth, std::move(masses));
}

CodeLengthFamily CodeLengthFamily::from_measure(
    const std::function<Rational(std::span<const int>)>& joint, int max_depth) {
    check_depth_budget(max_depth);
    if (joint(std::span<const int>{}) != Rational(1))
        throw DomainError("code family: the empty prefix must carry mass 1 (zero length)");
    std::map<std::vector<int>, Rational> masses;
    std::vector<int> prefix;
    std::function<void()> grow = [&]() {
        masses.emplace(prefix, joint(prefix));
        if (static_cast<int>(prefix.size()) == max_depth) return;
        for (int x = 0; x <= 1; ++x) {
            prefix.push_back(x);
            grow();
            prefix.pop_back();
        }
    };
    grow();
    return CodeLengthFamily(max_depth, std::move(masses));
}

CodeLengthFamily CodeLengthFamily::iid_measure(const Rational& prob_one, int max_depth) {
    const Rational prob_zero = Rational(1) - prob_one;
    return from_measure(
        [prob_one, prob_zero](std::span<const int> prefix) {
            Rational m(1);
            for (int x : prefix) m = m * (x == 1 ? prob_one : prob_zero);
            return m;
        },
        max_depth);
}

const Rational& CodeLengthFamily::mass(std::span<const int> prefix) const {
    auto it = masses_.find(std::vector<int>(prefix.begin(), prefix.end()));
    if (it == masses_.end())
        throw MissingPrefix("code family: prefix of length " + std::to_string(prefix.size()) +
                            " not stored (max depth " + std::to_string(max_depth_) + ")");
    return it->second;
}

double CodeLengthFamily::length(std::span<const int> prefix) const {
    return -std::log(mass(prefix).to_double());
}

// ---------------------------------------------------------------------------
// Liftability
// ---------------------------------------------------------------------------

LiftabilityReport liftability_check(const CodeLengthFamily& family, int depth) {
    if (depth > family.max_depth())
        throw MissingPrefix("liftability_check: depth exceeds the family's stored depth");
    LiftabilityReport report;
    report.depth = depth;

    const Rational one(1);
    std::vector<int> prefix;
    std::function<void()> visit = [&]() {
        const Rational& parent = family.mass(prefix);
        Rational m(0);
        for (int x = 0; x <= 1; ++x) {
            prefix.push_back(x);
            m = m + family.mass(prefix);
            prefix.pop_back();
        }
        m = m / parent;
        if (m > one) report.violations.push_back({prefix, m});
        if (static_cast<int>(prefix.size()) + 1 < depth) {
            for (int x = 0; x <= 1; ++x) {
                prefix.push_back(x);
                visit();
                prefix.pop_back();
            }
        }
    };
    visit();

    report.pass = report.violations.empty();
    return report;
}

nlohmann::json LiftabilityReport::to_json() const {
    nlohmann::json vio = nlohmann::json::array();
    for (const auto& v : violations) {
        nlohmann::json item;
        item["prefix"] = v.prefix;
        if (auto n = v.mass.numerator_int64())
            item["mass_numerator"] = *n;
        else
            item["mass_numerator"] = v.mass.numerator_str();
        if (auto d = v.mass.denominator_int64())
            item["mass_denominator"] = *d;
        else
            item["mass_denominator"] = v.mass.denominator_str();
        vio.push_back(std::move(item));
    }
    return {{"depth", depth}, {"pass", pass}, {"violations", std::move(vio)}};
}

// ---------------------------------------------------------------------------
// Code-to-evidence conversion
// ---------------------------------------------------------------------------

namespace {

class CodeEvidenceProcess final : public EvidenceProcess {
public:
    CodeEvidenceProcess(std::shared_ptr<const CodeLengthFamily> family, KernelPtr p0)
        : family_(std::move(family)), p0_(std::move(p0)) {
        if (p0_->alphabet_size() != 2) throw DomainError("code_to_e: binary alphabet only");
    }

    void step(int symbol) override {
        const double p0v = p0_->prob(history_, symbol);
        if (p0v == 0.0) throw AbsoluteContinuityViolation("code_to_e: p0(x|h) = 0 on path");
        cum_log_p0_ += std::log(p0v);
        history_.push_back(symbol);
        code_length_ = family_->length(history_);  // throws MissingPrefix past depth
    }

    double log_evidence() const override { return -code_length_ - cum_log_p0_; }
    std::size_t step_count() const override { return history_.size(); }
    std::unique_ptr<EvidenceProcess> clone() const override {
        return std::make_unique<CodeEvidenceProcess>(*this);
    }

private:
    std::shared_ptr<const CodeLengthFamily> family_;
    KernelPtr p0_;
    std::vector<int> history_;
    double cum_log_p0_ = 0.0;
    double code_length_ = 0.0;
};

}  // namespace

ProcessPtr code_to_e(std::shared_ptr<const CodeLengthFamily> family, KernelPtr p0) {
    return std::make_unique<CodeEvidenceProcess>(std::move(family), std::move(p0));
}

ProcessPtr code_to_e(const CodeLengthFamily& family, const Distribution& p0) {
    return code_to_e(std::make_shared<const CodeLengthFamily>(family), iid_kernel(p0));
}

}  // namespace evident
