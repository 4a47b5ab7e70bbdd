#include "evident/core.hpp"

#include <algorithm>
#include <numeric>

#include "evident/rng.hpp"

namespace evident {

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.size() < 2) throw DomainError("distribution needs an alphabet of size >= 2");
    double sum = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0) || p > 1.0 + kProbSumTolerance)
            throw DomainError("distribution entry outside [0, 1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kProbSumTolerance)
        throw DomainError("distribution entries sum to " + std::to_string(sum) +
                          ", not 1 within 1e-12");
    if (sum != 1.0) {
        for (double& p : probs_) p /= sum;
    }
}

Distribution Distribution::bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("bernoulli parameter outside [0, 1]");
    return Distribution({1.0 - p, p});
}

Distribution Distribution::uniform(int alphabet_size) {
    if (alphabet_size < 2) throw DomainError("alphabet size must be >= 2");
    return Distribution(std::vector<double>(static_cast<std::size_t>(alphabet_size),
                                            1.0 / alphabet_size));
}

Distribution Distribution::point_mass(int alphabet_size, int symbol) {
    if (alphabet_size < 2) throw DomainError("alphabet size must be >= 2");
    if (symbol < 0 || symbol >= alphabet_size) throw DomainError("symbol outside alphabet");
    std::vector<double> p(static_cast<std::size_t>(alphabet_size), 0.0);
    p[static_cast<std::size_t>(symbol)] = 1.0;
    return Distribution(std::move(p));
}

SamplePath SamplePath::generate(std::uint64_t seed, const Distribution& generator,
                                std::size_t length) {
    RngStream rng(seed);
    SamplePath path{{}, seed, generator};
    path.symbols.reserve(length);
    for (std::size_t t = 0; t < length; ++t) path.symbols.push_back(sample_symbol(rng, generator));
    return path;
}

double kl_divergence(const Distribution& p, const Distribution& q) {
    if (p.size() != q.size()) throw DomainError("kl_divergence: mismatched alphabets");
    double kl = 0.0;
    for (int x = 0; x < p.size(); ++x) {
        if (p[x] == 0.0) continue;  // 0 log(0/q) = 0
        if (q[x] == 0.0)
            throw AbsoluteContinuityViolation("kl_divergence: p(x) > 0 where q(x) = 0");
        kl += p[x] * std::log(p[x] / q[x]);
    }
    return std::max(kl, 0.0);
}

double log_score(const Distribution& p, int symbol) {
    if (symbol < 0 || symbol >= p.size()) throw DomainError("log_score: symbol outside alphabet");
    const double px = p[symbol];
    if (px == 0.0) return std::numeric_limits<double>::infinity();
    return -std::log(px);
}

double weight_of_evidence(const Distribution& p1, const Distribution& p0,
                          std::span<const int> symbols, double initial) {
    if (p1.size() != p0.size()) throw DomainError("weight_of_evidence: mismatched alphabets");
    double w = initial;
    for (int x : symbols) {
        if (x < 0 || x >= p0.size()) throw DomainError("weight_of_evidence: symbol outside alphabet");
        if (p0[x] == 0.0) {
            if (p1[x] > 0.0)
                throw AbsoluteContinuityViolation("weight_of_evidence: p0(x) = 0 < p1(x)");
            return -std::numeric_limits<double>::infinity();
        }
        w += std::log(p1[x]) - std::log(p0[x]);
    }
    return w;
}

}  // namespace evident
