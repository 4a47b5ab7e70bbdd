#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "evident/algebra.hpp"
#include "evident/eprocess.hpp"
#include "evident/rng.hpp"
#include "oracles.hpp"

using namespace evident;

namespace {
const Distribution b65 = Distribution::bernoulli(0.65);
const Distribution b50 = Distribution::bernoulli(0.5);
}

TEST_CASE("lr process accumulates per-step log ratios") {
    auto lr = lr_process(b65, b50);
    CHECK(lr->log_evidence() == 0.0);
    lr->step(1);
    lr->step(1);
    lr->step(0);
    CHECK(lr->log_evidence() ==
          doctest::Approx(2.0 * std::log(1.3) + std::log(0.7)).epsilon(1e-13));
    CHECK(lr->step_count() == 3);
}

TEST_CASE("lr with identical kernels stays at evidence 1") {
    auto lr = lr_process(b65, b65);
    for (int x : {1, 0, 0, 1, 1}) {
        lr->step(x);
        CHECK(lr->evidence() == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("lr one-step expectation under the null is exactly 1") {
    // E_{P0}[E_1] = 0.5 * 1.3 + 0.5 * 0.7
    double e = 0.0;
    for (int x = 0; x <= 1; ++x) {
        auto lr = lr_process(b65, b50);
        lr->step(x);
        e += 0.5 * lr->evidence();
    }
    CHECK(e == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("lr absolute continuity violation") {
    auto lr = lr_process(b65, Distribution::point_mass(2, 1));
    CHECK_THROWS_AS(lr->step(0), AbsoluteContinuityViolation);
}

TEST_CASE("bettor processes die on the wrong outcome") {
    auto heads = bet_on_heads();
    heads->step(1);
    CHECK(heads->evidence() == doctest::Approx(2.0));
    heads->step(0);
    CHECK(heads->evidence() == 0.0);
    heads->step(1);  // stays dead
    CHECK(heads->evidence() == 0.0);
}

TEST_CASE("bayes factor with point priors reduces bit-exactly to lr") {
    RngStream rng(5, 0);
    for (int trial = 0; trial < 20; ++trial) {
        auto lr = lr_process(b65, b50);
        auto bf = bayes_factor_process(DiscretePrior::point(b65), DiscretePrior::point(b50));
        for (int t = 0; t < 20; ++t) {
            const int x = static_cast<int>(rng.next_u64() & 1);
            lr->step(x);
            bf->step(x);
            CHECK(lr->log_evidence() == bf->log_evidence());  // bitwise
        }
    }
}

TEST_CASE("bayes factor mixture: hand value and exhaustive unit expectation") {
    const DiscretePrior prior1 =
        DiscretePrior::uniform({Distribution::bernoulli(0.3), Distribution::bernoulli(0.7)});
    const DiscretePrior prior0 = DiscretePrior::point(b50);

    auto bf = bayes_factor_process(prior1, prior0);
    bf->step(1);
    bf->step(1);
    // (0.5*0.09 + 0.5*0.49) / 0.25
    CHECK(bf->evidence() == doctest::Approx(1.16).epsilon(1e-12));

    double expectation = 0.0;
    oracles::enumerate_paths(b50, 3, [&](std::span<const int> path, double prob) {
        auto p = bayes_factor_process(prior1, prior0);
        p->step_all(path);
        expectation += prob * p->evidence();
    });
    CHECK(expectation == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("prior validation") {
    CHECK_THROWS_AS(DiscretePrior({{b65, 0.6}, {b50, 0.6}}), WeightViolation);
    CHECK_THROWS_AS(DiscretePrior({{b65, -0.1}, {b50, 1.1}}), WeightViolation);
    CHECK_THROWS_AS(DiscretePrior({}), DomainError);
}

TEST_CASE("plugin kernel: KT and Laplace point predictions") {
    PluginKernel kt(Smoothing::krichevsky_trofimov);
    const std::vector<int> empty{};
    const std::vector<int> two_ones{1, 1};
    const std::vector<int> one_one{1};
    CHECK(kt.prob(empty, 1) == doctest::Approx(0.5));
    CHECK(kt.prob(two_ones, 1) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));

    PluginKernel laplace(Smoothing::laplace);
    CHECK(laplace.prob(empty, 1) == doctest::Approx(0.5));
    CHECK(laplace.prob(one_one, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    // full probability at every history
    CHECK(kt.prob(two_ones, 0) + kt.prob(two_ones, 1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("prequential process: exhaustive unit expectation at n = 3") {
    double expectation = 0.0;
    oracles::enumerate_paths(b50, 3, [&](std::span<const int> path, double prob) {
        auto p = prequential_process(b50);
        p->step_all(path);
        expectation += prob * p->evidence();
    });
    CHECK(expectation == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ml plugin: values and the supermartingale violation") {
    auto ml = ml_plugin_process(b50);
    ml->step(1);
    CHECK(ml->evidence() == doctest::Approx(2.0).epsilon(1e-14));
    ml->step(0);
    CHECK(ml->evidence() == doctest::Approx(1.0).epsilon(1e-14));

    // one-step expectation under the null at t = 1 is 2 > 1
    double e = 0.0;
    for (int x = 0; x <= 1; ++x) {
        auto p = ml_plugin_process(b50);
        p->step(x);
        e += 0.5 * p->evidence();
    }
    CHECK(e == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("scoring process: log rule equals lr bit for bit") {
    RngStream rng(13, 0);
    auto lr = lr_process(b65, b50);
    auto sc = scoring_rule_process(ScoringRule::log_rule(), b65, b50);
    for (int t = 0; t < 200; ++t) {
        const int x = static_cast<int>(rng.next_u64() & 1);
        lr->step(x);
        sc->step(x);
        CHECK(lr->log_evidence() == sc->log_evidence());  // bitwise
    }
}

TEST_CASE("scoring process: brier factor expectation below 1") {
    const Distribution b75 = Distribution::bernoulli(0.75);
    double e = 0.0;
    for (int x = 0; x <= 1; ++x) {
        auto p = scoring_rule_process(ScoringRule::brier_rule(), b75, b50);
        p->step(x);
        e += 0.5 * p->evidence();
    }
    CHECK(e == doctest::Approx(0.5 * std::exp(-5.0 / 8.0) + 0.5 * std::exp(3.0 / 8.0))
                   .epsilon(1e-14));
    CHECK(e < 1.0);

    auto same = scoring_rule_process(ScoringRule::brier_rule(), b50, b50);
    same->step(0);
    same->step(1);
    CHECK(same->evidence() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("every constructor except the ml plugin certifies at depth 6") {
    const IidKernel null_kernel(b50);
    const std::vector<std::pair<std::string, ProcessFactory>> constructors = {
        {"lr", [] { return lr_process(b65, b50); }},
        {"bayes_factor", [] {
             return bayes_factor_process(
                 DiscretePrior::uniform(
                     {Distribution::bernoulli(0.3), Distribution::bernoulli(0.7)}),
                 DiscretePrior::point(b50));
         }},
        {"kt", [] { return prequential_process(b50); }},
        {"laplace", [] { return prequential_process(b50, Smoothing::laplace); }},
        {"brier", [] {
             return scoring_rule_process(ScoringRule::brier_rule(),
                                         Distribution::bernoulli(0.75), b50);
         }},
        {"log-scoring", [] { return scoring_rule_process(ScoringRule::log_rule(), b65, b50); }},
    };
    for (const auto& [label, factory] : constructors) {
        const auto report = validity_check(factory, null_kernel, 6, label);
        INFO(label);
        CHECK(report.pass);
    }
    CHECK_FALSE(validity_check([] { return ml_plugin_process(b50); }, null_kernel, 6, "ml").pass);
}

TEST_CASE("clone detaches state") {
    auto lr = lr_process(b65, b50);
    lr->step(1);
    auto copy = lr->clone();
    copy->step(1);
    CHECK(copy->step_count() == 2);
    CHECK(lr->step_count() == 1);
    CHECK(lr->log_evidence() == doctest::Approx(std::log(1.3)).epsilon(1e-14));
}
