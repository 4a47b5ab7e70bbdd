#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "evident/algebra.hpp"
#include "evident/eprocess.hpp"
#include "evident/process_spec.hpp"

using namespace evident;

namespace {
const IidKernel null_kernel(Distribution::bernoulli(0.5));

ValidityReport check(const std::string& spec, int depth = 4) {
    return validity_check(parse_process_spec(spec), null_kernel, depth, spec);
}
}  // namespace

TEST_CASE("atoms parse and certify") {
    CHECK(check("lr(0.65,0.5)").pass);
    CHECK(check("kt(0.5)").pass);
    CHECK(check("laplace(0.5)").pass);
    CHECK(check("brier(0.75,0.5)").pass);
    CHECK(check("bf2(0.3,0.7,0.5)").pass);
    CHECK(check("bet_heads").pass);
    CHECK_FALSE(check("ml(0.5)", 1).pass);
}

TEST_CASE("spec-grammar examples") {
    CHECK(check("mix(0.5:lr(0.65,0.5), 0.5:lr(0.35,0.5))").pass);
    CHECK_FALSE(check("max(bet_heads, bet_tails)", 1).pass);
    CHECK(check("stitch(lr(0.65,0.5) @ t=1 -> lr(0.3,0.5))").pass);
    CHECK(check("stop(lr(0.65,0.5) @ e>=2)").pass);
    CHECK(check("scale(0.5, lr(0.65,0.5))").pass);
    CHECK(check("mix(0.25:bet_heads, 0.25:bet_tails, 0.5:kt(0.5))").pass);
}

TEST_CASE("parsed factories make independent processes") {
    const ProcessFactory factory = parse_process_spec("lr(0.65,0.5)");
    auto a = factory();
    auto b = factory();
    a->step(1);
    CHECK(a->step_count() == 1);
    CHECK(b->step_count() == 0);
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_process_spec("mix(0.5:lr(0.65,0.5)"), DomainError);
    CHECK_THROWS_AS(parse_process_spec("unknown(1)"), DomainError);
    CHECK_THROWS_AS(parse_process_spec("lr(0.65 0.5)"), DomainError);
    CHECK_THROWS_AS(parse_process_spec("lr(0.65,0.5) trailing"), DomainError);
    CHECK_THROWS_AS(parse_process_spec("stop(lr(0.6,0.5) @ x=3)"), DomainError);
    CHECK_THROWS_AS(parse_process_spec(""), DomainError);
}

TEST_CASE("weight violations surface at construction") {
    const ProcessFactory factory = parse_process_spec("mix(0.8:bet_heads, 0.8:bet_tails)");
    CHECK_THROWS_AS(factory(), WeightViolation);
    const ProcessFactory scale_factory = parse_process_spec("scale(1.5, lr(0.65,0.5))");
    CHECK_THROWS_AS(scale_factory(), WeightViolation);
}
