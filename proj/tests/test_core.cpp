#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "evident/core.hpp"
#include "evident/rng.hpp"

using namespace evident;

TEST_CASE("distribution construction and renormalization") {
    CHECK_NOTHROW(Distribution({0.5, 0.5}));
    CHECK_NOTHROW(Distribution({0.2, 0.3, 0.5}));
    CHECK_THROWS_AS(Distribution({0.5, 0.6}), DomainError);
    CHECK_THROWS_AS(Distribution({-0.1, 1.1}), DomainError);
    CHECK_THROWS_AS(Distribution({1.0}), DomainError);

    // Within-tolerance sums are renormalized to exactly 1.
    const double eps = 4e-13;
    Distribution d({0.5 + eps, 0.5});
    CHECK(d[0] + d[1] == doctest::Approx(1.0).epsilon(1e-15));

    Distribution bern = Distribution::bernoulli(0.65);
    CHECK(bern[1] == 0.65);
    CHECK(bern[0] == 0.35);
    CHECK(Distribution::point_mass(2, 1)[1] == 1.0);
    CHECK(Distribution::uniform(4)[3] == doctest::Approx(0.25));
}

TEST_CASE("alphabet requires at least two symbols") {
    CHECK_THROWS_AS(Alphabet(1), DomainError);
    CHECK(Alphabet(2).size == 2);
}

TEST_CASE("kl divergence values") {
    const Distribution b65 = Distribution::bernoulli(0.65);
    const Distribution b55 = Distribution::bernoulli(0.55);
    const Distribution b50 = Distribution::bernoulli(0.5);
    const Distribution b80 = Distribution::bernoulli(0.8);

    CHECK(std::abs(kl_divergence(b65, b50) - 0.0457) < 1e-4);
    const double direct_65 = 0.65 * std::log(0.65 / 0.5) + 0.35 * std::log(0.35 / 0.5);
    CHECK(kl_divergence(b65, b50) == doctest::Approx(direct_65).epsilon(1e-14));
    // direct evaluation of sum p log(p/q)
    const double direct = 0.55 * std::log(0.55 / 0.8) + 0.45 * std::log(0.45 / 0.2);
    CHECK(kl_divergence(b55, b80) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(std::abs(kl_divergence(b55, b80) - 0.15884) < 1e-4);
    CHECK(kl_divergence(b65, b65) == 0.0);

    // cross-check of the misspecification drift
    const double delta = kl_divergence(b55, b50) - kl_divergence(b55, b80);
    CHECK(std::abs(delta - (-0.154)) < 1e-3);

    CHECK_THROWS_AS(kl_divergence(b65, Distribution::bernoulli(1.0)),
                    AbsoluteContinuityViolation);
    // 0 log(0/q) = 0: point mass against interior q is finite
    CHECK(kl_divergence(Distribution::point_mass(2, 1), b50) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("kl nonnegativity with equality iff equal") {
    for (double p = 0.05; p < 1.0; p += 0.1) {
        for (double q = 0.05; q < 1.0; q += 0.1) {
            const double kl =
                kl_divergence(Distribution::bernoulli(p), Distribution::bernoulli(q));
            CHECK(kl >= 0.0);
            if (std::abs(p - q) > 1e-12)
                CHECK(kl > 0.0);
            else
                CHECK(kl == doctest::Approx(0.0).epsilon(1e-15));
        }
    }
}

TEST_CASE("log score") {
    CHECK(log_score(Distribution::bernoulli(0.5), 1) == doctest::Approx(std::log(2.0)));
    CHECK(log_score(Distribution::bernoulli(0.65), 1) ==
          doctest::Approx(-std::log(0.65)).epsilon(1e-15));
    CHECK(log_score(Distribution::point_mass(2, 1), 1) == 0.0);
    CHECK(std::isinf(log_score(Distribution::point_mass(2, 1), 0)));  // saturating, not an error
}

TEST_CASE("weight of evidence") {
    const Distribution b65 = Distribution::bernoulli(0.65);
    const Distribution b50 = Distribution::bernoulli(0.5);

    const std::vector<int> single{1};
    const std::vector<int> pair{1, 0};
    CHECK(weight_of_evidence(b50, b50, std::span<const int>(pair)) == 0.0);
    CHECK(weight_of_evidence(b65, b50, std::span<const int>(single)) ==
          doctest::Approx(std::log(1.3)).epsilon(1e-14));
    CHECK(weight_of_evidence(b65, b50, std::span<const int>(pair)) ==
          doctest::Approx(std::log(1.3) + std::log(0.7)).epsilon(1e-13));

    CHECK_THROWS_AS(
        weight_of_evidence(b65, Distribution::point_mass(2, 1), std::span<const int>(pair)),
        AbsoluteContinuityViolation);
}

TEST_CASE("weight of evidence: streaming additivity is exact") {
    const Distribution b65 = Distribution::bernoulli(0.65);
    const Distribution b50 = Distribution::bernoulli(0.5);
    RngStream rng(7, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n1 = 1 + rng.next_u64() % 40;
        const std::size_t n2 = 1 + rng.next_u64() % 40;
        std::vector<int> all;
        for (std::size_t i = 0; i < n1 + n2; ++i)
            all.push_back(static_cast<int>(rng.next_u64() & 1));
        std::span<const int> first(all.data(), n1);
        std::span<const int> second(all.data() + n1, n2);

        const double w_first = weight_of_evidence(b65, b50, first);
        const double resumed = weight_of_evidence(b65, b50, second, w_first);
        const double whole = weight_of_evidence(b65, b50, std::span<const int>(all));
        CHECK(whole == resumed);  // bit-exact: same summation order
    }
}

TEST_CASE("exp(weight) equals the product of per-step ratios") {
    const Distribution b65 = Distribution::bernoulli(0.65);
    const Distribution b50 = Distribution::bernoulli(0.5);
    RngStream rng(11, 0);
    std::vector<int> path;
    double product = 1.0;
    for (std::size_t t = 0; t < 1000; ++t) {
        const int x = static_cast<int>(rng.next_u64() & 1);
        path.push_back(x);
        product *= b65[x] / b50[x];
    }
    const double w = weight_of_evidence(b65, b50, std::span<const int>(path));
    CHECK(std::exp(w) == doctest::Approx(product).epsilon(1e-12));
}

TEST_CASE("sample path regeneration is bit-exact") {
    const Distribution gen = Distribution::bernoulli(0.3);
    const SamplePath path = SamplePath::generate(123456789ULL, gen, 500);
    const SamplePath again = SamplePath::generate(path.seed, path.generator, path.symbols.size());
    CHECK(path.symbols == again.symbols);

    // sampling frequency sanity
    double ones = 0;
    const SamplePath big = SamplePath::generate(99ULL, gen, 100000);
    for (int x : big.symbols) ones += x;
    CHECK(ones / 100000.0 == doctest::Approx(0.3).epsilon(0.02));
}

TEST_CASE("rng streams are deterministic and disjoint") {
    RngStream a(42, 0), b(42, 0), c(42, 1);
    CHECK(a.next_u64() == b.next_u64());
    RngStream a2(42, 0);
    bool any_diff = false;
    for (int i = 0; i < 16; ++i) any_diff |= (a2.next_u64() != c.next_u64());
    CHECK(any_diff);

    // derived raw state reproduces the (master, index) stream
    RngStream direct(RngStream::derive(42, 7));
    RngStream indexed(42, 7);
    for (int i = 0; i < 8; ++i) CHECK(direct.next_u64() == indexed.next_u64());
}
