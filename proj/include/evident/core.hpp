#ifndef EVIDENT_CORE_HPP
#define EVIDENT_CORE_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace evident {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct AbsoluteContinuityViolation : std::runtime_error {
    explicit AbsoluteContinuityViolation(const std::string& what)
        : std::runtime_error(what) {}
};

struct WeightViolation : std::runtime_error {
    explicit WeightViolation(const std::string& what) : std::runtime_error(what) {}
};

struct DepthTooLarge : std::runtime_error {
    explicit DepthTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct MissingPrefix : std::runtime_error {
    explicit MissingPrefix(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyCalibration : std::runtime_error {
    explicit EmptyCalibration(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Finite-alphabet primitives
// ---------------------------------------------------------------------------

inline constexpr double kProbSumTolerance = 1e-12;

/// Finite alphabet; symbols are indices 0..size-1.
struct Alphabet {
    int size;

    explicit Alphabet(int n) : size(n) {
        if (n < 2) throw DomainError("alphabet size must be >= 2");
    }
};

/// Probability distribution over a finite alphabet.
///
/// Constructors renormalize when the entries sum to 1 within 1e-12 absolute
/// and reject otherwise.
class Distribution {
public:
    explicit Distribution(std::vector<double> probs);

    static Distribution bernoulli(double p);   // P(1) = p, P(0) = 1-p
    static Distribution uniform(int alphabet_size);
    static Distribution point_mass(int alphabet_size, int symbol);

    int size() const { return static_cast<int>(probs_.size()); }
    double operator[](int symbol) const { return probs_[static_cast<std::size_t>(symbol)]; }
    std::span<const double> probs() const { return probs_; }

    bool operator==(const Distribution& other) const { return probs_ == other.probs_; }

private:
    std::vector<double> probs_;
};

/// One-step conditional sub-probability over a finite alphabet, given a
/// history. The conditional at step t may depend only on the past x^{t-1};
/// the interface enforces this by never exposing the current symbol.
/// Per-history mass sums to at most 1 (strictly less is allowed).
class PredictiveKernel {
public:
    virtual ~PredictiveKernel() = default;
    virtual int alphabet_size() const = 0;
    virtual double prob(std::span<const int> history, int symbol) const = 0;

    double mass(std::span<const int> history) const {
        double m = 0.0;
        for (int x = 0; x < alphabet_size(); ++x) m += prob(history, x);
        return m;
    }
};

using KernelPtr = std::shared_ptr<const PredictiveKernel>;

/// Memoryless kernel: the same distribution at every history.
class IidKernel final : public PredictiveKernel {
public:
    explicit IidKernel(Distribution dist) : dist_(std::move(dist)) {}

    int alphabet_size() const override { return dist_.size(); }
    double prob(std::span<const int>, int symbol) const override { return dist_[symbol]; }
    const Distribution& dist() const { return dist_; }

private:
    Distribution dist_;
};

inline KernelPtr iid_kernel(const Distribution& d) { return std::make_shared<IidKernel>(d); }

// ---------------------------------------------------------------------------
// Evidence-process interface
// ---------------------------------------------------------------------------

/// Stateful multiplicative evidence accumulator. All arithmetic is carried in
/// the log domain; exp() happens only at reporting boundaries. Instances are
/// single-owner mutable state; distinct instances are independent.
class EvidenceProcess {
public:
    virtual ~EvidenceProcess() = default;

    /// Observe the next symbol and update the accumulated evidence.
    virtual void step(int symbol) = 0;

    /// Natural log of the evidence after step_count() observations.
    /// -infinity encodes evidence exactly zero.
    virtual double log_evidence() const = 0;

    virtual std::size_t step_count() const = 0;

    /// Deep copy, used by combinators and by enumeration checkers.
    virtual std::unique_ptr<EvidenceProcess> clone() const = 0;

    double evidence() const { return std::exp(log_evidence()); }

    void step_all(std::span<const int> symbols) {
        for (int x : symbols) step(x);
    }
};

using ProcessPtr = std::unique_ptr<EvidenceProcess>;
using ProcessFactory = std::function<ProcessPtr()>;

// ---------------------------------------------------------------------------
// Sample paths
// ---------------------------------------------------------------------------

/// Finite symbol sequence plus the metadata needed to regenerate it
/// bit-exactly: the raw RNG stream state and the generating distribution.
struct SamplePath {
    std::vector<int> symbols;
    std::uint64_t seed = 0;       // raw RngStream state used for generation
    Distribution generator;

    static SamplePath generate(std::uint64_t seed, const Distribution& generator,
                               std::size_t length);
};

// ---------------------------------------------------------------------------
// Divergences and scores
// ---------------------------------------------------------------------------

/// KL divergence sum_x p(x) log(p(x)/q(x)) in nats, with 0 log(0/q) = 0.
/// Throws AbsoluteContinuityViolation if p(x) > 0 where q(x) = 0.
double kl_divergence(const Distribution& p, const Distribution& q);

/// Log score -log p(x); +infinity when p(x) = 0 (a valid saturating value,
/// not an error).
double log_score(const Distribution& p, int symbol);

/// Cumulative log likelihood ratio sum_t log(p1(x_t)/p0(x_t)) over the path,
/// accumulated left to right starting from `initial`. The initial-value form
/// makes streaming decomposition exact: resuming from the value after a
/// prefix reproduces the full-path result bit for bit.
double weight_of_evidence(const Distribution& p1, const Distribution& p0,
                          std::span<const int> symbols, double initial = 0.0);

inline double weight_of_evidence(const Distribution& p1, const Distribution& p0,
                                 const SamplePath& path, double initial = 0.0) {
    return weight_of_evidence(p1, p0, std::span<const int>(path.symbols), initial);
}

}  // namespace evident

#endif  // EVIDENT_CORE_HPP
