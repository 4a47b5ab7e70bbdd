// Test-only oracles, independent of the library's evidence-process path:
// plain lattice dynamic programming over (t, ones-count) states and explicit
// path enumeration. Used to freeze expected values for the Monte Carlo and
// enumeration assertions.

#ifndef EVIDENT_TESTS_ORACLES_HPP
#define EVIDENT_TESTS_ORACLES_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "evident/core.hpp"
#include "evident/rational.hpp"

namespace oracles {

/// Exact-in-time lattice DP for the first t where the binary log-LR walk
/// S_t = ones * log(p1/p0) + (t - ones) * log((1-p1)/(1-p0)) reaches log b,
/// with data ~ Bern(p_data). O(cap^2) states.
struct TauDistribution {
    double crossing_probability = 0.0;   // P(tau <= cap)
    double mean = 0.0;                   // E[tau | tau <= cap]
    double sd = 0.0;
    std::vector<double> pmf;             // pmf[t-1] = P(tau = t), t = 1..cap
};

inline TauDistribution dp_crossing(double p_data, double p1, double p0, double b,
                                   std::size_t cap) {
    const double inc1 = std::log(p1 / p0);
    const double inc0 = std::log((1.0 - p1) / (1.0 - p0));
    const double log_b = std::log(b);

    std::vector<double> alive{1.0};  // alive[k] = P(not yet crossed, ones = k) at current t
    TauDistribution out;
    out.pmf.assign(cap, 0.0);
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t t = 1; t <= cap; ++t) {
        std::vector<double> next(t + 1, 0.0);
        double pt = 0.0;
        for (std::size_t k = 0; k < alive.size(); ++k) {
            if (alive[k] == 0.0) continue;
            for (int sym = 0; sym <= 1; ++sym) {
                const std::size_t k2 = k + static_cast<std::size_t>(sym);
                const double s = static_cast<double>(k2) * inc1 +
                                 static_cast<double>(t - k2) * inc0;
                const double w = alive[k] * (sym == 1 ? p_data : 1.0 - p_data);
                if (s >= log_b) {
                    pt += w;
                    e1 += w * static_cast<double>(t);
                    e2 += w * static_cast<double>(t) * static_cast<double>(t);
                } else {
                    next[k2] += w;
                }
            }
        }
        out.pmf[t - 1] = pt;
        out.crossing_probability += pt;
        alive = std::move(next);
    }
    if (out.crossing_probability > 0.0) {
        out.mean = e1 / out.crossing_probability;
        out.sd = std::sqrt(e2 / out.crossing_probability - out.mean * out.mean);
    }
    return out;
}

/// Exact probability that a (t, ones)-measurable crossing condition fires by
/// time T on Bern(p_data) data.
inline double dp_crossing_probability(double p_data,
                                      const std::function<bool(std::size_t, std::size_t)>& crossed,
                                      std::size_t T) {
    std::vector<double> alive{1.0};
    double p = 0.0;
    for (std::size_t t = 1; t <= T; ++t) {
        std::vector<double> next(t + 1, 0.0);
        for (std::size_t k = 0; k < alive.size(); ++k) {
            if (alive[k] == 0.0) continue;
            for (int sym = 0; sym <= 1; ++sym) {
                const std::size_t k2 = k + static_cast<std::size_t>(sym);
                const double w = alive[k] * (sym == 1 ? p_data : 1.0 - p_data);
                if (crossed(t, k2))
                    p += w;
                else
                    next[k2] += w;
            }
        }
        alive = std::move(next);
    }
    return p;
}

/// Calls fn(path, probability) for every length-n path over the alphabet of
/// the iid distribution.
inline void enumerate_paths(const evident::Distribution& iid, std::size_t n,
                            const std::function<void(std::span<const int>, double)>& fn) {
    std::vector<int> path;
    std::function<void(double)> rec = [&](double prob) {
        if (path.size() == n) {
            fn(path, prob);
            return;
        }
        for (int x = 0; x < iid.size(); ++x) {
            path.push_back(x);
            rec(prob * iid[x]);
            path.pop_back();
        }
    };
    rec(1.0);
}

/// Bernoulli NML conditional at horizon N by explicit enumeration of every
/// completion sequence in exact rationals (no count collapsing): the
/// independent route checked against the library's binomial-collapsed
/// computation.
inline evident::Rational nml_conditional_bruteforce(int N, std::span<const int> history,
                                                    int symbol) {
    using evident::Rational;

    auto nml_weight = [&](const std::vector<int>& full) {
        int k = 0;
        for (int x : full) k += x;
        mpz_class a, b;
        mpz_ui_pow_ui(a.get_mpz_t(), static_cast<unsigned long>(k),
                      static_cast<unsigned long>(k));
        mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(N - k),
                      static_cast<unsigned long>(N - k));
        return mpz_class(a * b);
    };

    auto marginal = [&](const std::vector<int>& prefix) {
        mpz_class sum = 0;
        std::vector<int> full = prefix;
        const int rest = N - static_cast<int>(prefix.size());
        std::function<void()> rec = [&]() {
            if (static_cast<int>(full.size()) == N) {
                sum += nml_weight(full);
                return;
            }
            for (int x = 0; x <= 1; ++x) {
                full.push_back(x);
                rec();
                full.pop_back();
            }
        };
        (void)rest;
        rec();
        return sum;
    };

    std::vector<int> h(history.begin(), history.end());
    std::vector<int> hx = h;
    hx.push_back(symbol);
    return Rational::from_integers(marginal(hx), marginal(h));
}

}  // namespace oracles

#endif  // EVIDENT_TESTS_ORACLES_HPP
