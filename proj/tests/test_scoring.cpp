#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "evident/scoring.hpp"

using namespace evident;

namespace {
const Distribution b50 = Distribution::bernoulli(0.5);
const Distribution b75 = Distribution::bernoulli(0.75);
}

TEST_CASE("brier score point values") {
    CHECK(brier(b50, 0) == 0.5);
    CHECK(brier(b50, 1) == 0.5);
    CHECK(brier(b75, 0) == doctest::Approx(9.0 / 8.0).epsilon(1e-15));
    CHECK(brier(b75, 1) == doctest::Approx(1.0 / 8.0).epsilon(1e-15));
    CHECK(brier(Distribution::point_mass(2, 1), 1) == 0.0);
}

TEST_CASE("one-step evidence expectation: log is 1, brier decays") {
    const ScoringRule log_rule = ScoringRule::log_rule();
    const ScoringRule brier_rule = ScoringRule::brier_rule();

    const double r = one_step_evidence_expectation(brier_rule, b75, b50);
    CHECK(r == doctest::Approx(0.5 * std::exp(-5.0 / 8.0) + 0.5 * std::exp(3.0 / 8.0))
                   .epsilon(1e-13));
    CHECK(std::abs(r - 0.9951) < 1e-3);

    CHECK(one_step_evidence_expectation(log_rule, b75, b50) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(one_step_evidence_expectation(brier_rule, b50, b50) == doctest::Approx(1.0));
}

TEST_CASE("uniqueness boundary on a bernoulli grid") {
    const ScoringRule log_rule = ScoringRule::log_rule();
    const ScoringRule brier_rule = ScoringRule::brier_rule();
    for (double p1 = 0.1; p1 < 1.0; p1 += 0.2) {
        for (double p0 = 0.1; p0 < 1.0; p0 += 0.2) {
            const Distribution d1 = Distribution::bernoulli(p1);
            const Distribution d0 = Distribution::bernoulli(p0);
            CHECK(one_step_evidence_expectation(log_rule, d1, d0) ==
                  doctest::Approx(1.0).epsilon(1e-14));
            if (std::abs(p1 - p0) > 1e-12)
                CHECK(one_step_evidence_expectation(brier_rule, d1, d0) < 1.0);
        }
    }
}

TEST_CASE("propriety on a grid") {
    const ScoringRule rules[] = {ScoringRule::log_rule(), ScoringRule::brier_rule()};
    for (const auto& rule : rules) {
        for (double p = 0.1; p < 1.0; p += 0.2) {
            const Distribution truth = Distribution::bernoulli(p);
            const double own = p * rule.score(truth, 1) + (1 - p) * rule.score(truth, 0);
            for (double q = 0.1; q < 1.0; q += 0.2) {
                const Distribution forecast = Distribution::bernoulli(q);
                const double other =
                    p * rule.score(forecast, 1) + (1 - p) * rule.score(forecast, 0);
                if (std::abs(p - q) > 1e-12)
                    CHECK(own < other);
                else
                    CHECK(own == doctest::Approx(other));
            }
        }
    }
}

TEST_CASE("decay curve is exactly geometric and hits the 100-step value") {
    const auto curve = decay_curve(ScoringRule::brier_rule(), b75, b50, 100);
    REQUIRE(curve.size() == 100);
    const double r = curve[0];
    CHECK(std::abs(r - 0.9951) < 1e-3);
    for (std::size_t i = 1; i < curve.size(); ++i)
        CHECK(curve[i] / curve[i - 1] == doctest::Approx(r).epsilon(1e-14));
    CHECK(std::abs(curve[99] - 0.61) < 0.01);

    const auto log_curve = decay_curve(ScoringRule::log_rule(), b75, b50, 5);
    for (double v : log_curve) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("decay csv shape") {
    const auto curve = decay_curve(ScoringRule::brier_rule(), b75, b50, 3);
    std::ostringstream os;
    write_decay_csv(curve, os);
    const std::string text = os.str();
    CHECK(text.rfind("n,expected_evidence\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}
