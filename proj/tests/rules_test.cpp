#include "cadent/rules.hpp"
#include "cadent/spacetime.hpp"
#include "cadent/verify.hpp"
#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace cadent;

namespace {
const LocalRule rule90(2, -1, 1, {1, 0, 1});
const LocalRule rule150(2, -1, 1, {1, 1, 1});
}  // namespace

TEST_CASE("rule construction validates and reduces") {
    const LocalRule r(2, -1, 1, {1, 1, 1});
    CHECK(r.modulus() == 2);
    CHECK(r.span() == Span{-1, 1});

    CHECK_THROWS_AS(LocalRule(1, 0, 0, {0}), std::invalid_argument);
    CHECK_THROWS_AS(LocalRule(2, 1, 0, {1}), std::invalid_argument);
    CHECK_THROWS_AS(LocalRule(2, -1, 1, {1, 1}), std::invalid_argument);

    const LocalRule reduced(4, 0, 1, {5, 6});
    CHECK(reduced.coeffs() == std::vector<Sym>{1, 2});
}

TEST_CASE("apply_local evaluates the affine combination") {
    CHECK(apply_local(rule150, std::vector<Sym>{1, 1, 1}) == 1);
    CHECK(apply_local(rule150, std::vector<Sym>{1, 0, 1}) == 0);
    const LocalRule id = identity_rule(7);
    for (Sym x = 0; x < 7; ++x) CHECK(apply_local(id, std::vector<Sym>{x}) == x);
    CHECK_THROWS_AS(apply_local(rule150, std::vector<Sym>{1, 1}), std::invalid_argument);
}

TEST_CASE("rule_power is the convolution power") {
    const LocalRule sq = rule_power(rule90, 2);
    CHECK(sq.span() == Span{-2, 2});
    CHECK(sq.coeffs() == std::vector<Sym>{1, 0, 0, 0, 1});

    CHECK(rule_power(rule90, 1) == rule90);
    CHECK(rule_power(rule90, 0) == identity_rule(2));
    CHECK_THROWS_AS(rule_power(rule90, -1), std::invalid_argument);
}

TEST_CASE("rule_power application equals repeated stepping") {
    // oracle: evolve random cone windows step by step and compare the single
    // value the power rule produces
    TestRng rng(991);
    for (const std::int64_t r : {2, 3, 4, 6}) {
        for (std::int64_t k = 1; k <= 2; ++k) {
            std::vector<Sym> coeffs;
            for (std::int64_t i = -k; i <= k; ++i) coeffs.push_back(rng.below(r));
            const LocalRule rule(r, -k, k, coeffs);
            for (std::int64_t u = 0; u <= 3; ++u) {
                const LocalRule power = rule_power(rule, u);
                for (int trial = 0; trial < 20; ++trial) {
                    std::vector<Sym> window;
                    for (std::int64_t i = 0; i < 2 * k * u + 1; ++i) window.push_back(rng.below(r));
                    const SpaceTimeDiagram d = simulate_cone(rule, window, -k * u, u);
                    CHECK(apply_local(power, window) == d.rows.back().values.front());
                }
            }
        }
    }
}

TEST_CASE("convolution additivity of powers") {
    TestRng rng(1234);
    for (int trial = 0; trial < 40; ++trial) {
        const std::int64_t r = rng.in(2, 9);
        const LocalRule rule = random_rule(rng, r, 2);
        const std::int64_t a = rng.below(3), b = rng.below(3);
        CHECK(rule_power(rule, a + b) == convolve(rule_power(rule, a), rule_power(rule, b)));
    }
}

TEST_CASE("rule_shift moves the span") {
    const LocalRule shifted = rule_shift(rule90, 1);
    CHECK(shifted.span() == Span{0, 2});
    CHECK(shifted.coeffs() == std::vector<Sym>{1, 0, 1});

    CHECK(rule_shift(rule90, 0) == rule90);

    const LocalRule pure_shift = rule_shift(identity_rule(5), 3);
    CHECK(pure_shift.span() == Span{3, 3});
    CHECK(pure_shift.coeffs() == std::vector<Sym>{1});
}

TEST_CASE("compose_direction is shift of power") {
    const LocalRule g = compose_direction(rule90, 1, 1);
    CHECK(g.span() == Span{0, 2});
    CHECK(g.coeffs() == std::vector<Sym>{1, 0, 1});

    CHECK(compose_direction(rule90, 2, 0) == rule_shift(identity_rule(2), 2));
    CHECK(compose_direction(rule90, 0, 2) == rule_power(rule90, 2));
    CHECK_THROWS_AS(compose_direction(rule90, 0, -1), std::invalid_argument);
}

TEST_CASE("compose_direction against simulate-then-shift") {
    // oracle: evolve the composed rule's dependence window q steps, then read
    // the site p value; must match one application of the composed rule
    TestRng rng(57);
    for (int trial = 0; trial < 100; ++trial) {
        const std::int64_t r = rng.in(2, 5);
        const LocalRule rule = random_rule(rng, r, 2);
        const std::int64_t p = rng.in(-3, 3), q = rng.below(4);
        const LocalRule g = compose_direction(rule, p, q);
        std::vector<Sym> window;
        for (std::int64_t i = 0; i < g.span().width(); ++i) window.push_back(rng.below(r));
        const SpaceTimeDiagram d = simulate_cone(rule, window, g.span().lo, q);
        CHECK(apply_local(g, window) == testing::diagram_at(d, p, q));
    }
}

TEST_CASE("direction composition is additive on configurations") {
    TestRng rng(311);
    for (int trial = 0; trial < 30; ++trial) {
        const std::int64_t r = rng.in(2, 5);
        const LocalRule rule = random_rule(rng, r, 1);
        const std::int64_t p1 = rng.in(-2, 2), q1 = rng.below(3);
        const std::int64_t p2 = rng.in(-2, 2), q2 = rng.below(3);
        const LocalRule g1 = compose_direction(rule, p1, q1);
        const LocalRule g2 = compose_direction(rule, p2, q2);
        const LocalRule g12 = compose_direction(rule, p1 + p2, q1 + q2);
        CHECK(convolve(g1, g2) == g12);
    }
}

TEST_CASE("permutativity matches gcd on the effective span") {
    const auto rep90 = permutativity(rule90);
    CHECK(rep90.bipermutative);
    CHECK(rep90.effective_span == Span{-1, 1});

    const LocalRule half(4, 0, 1, {1, 2});
    const auto rep_half = permutativity(half);
    CHECK(rep_half.left_permutative);
    CHECK_FALSE(rep_half.right_permutative);
    CHECK_FALSE(rep_half.bipermutative);

    CHECK(permutativity(identity_rule(6)).bipermutative);

    const LocalRule zero(3, -1, 1, {0, 0, 0});
    const auto rep_zero = permutativity(zero);
    CHECK_FALSE(rep_zero.left_permutative);
    CHECK_FALSE(rep_zero.right_permutative);
    CHECK_FALSE(rep_zero.effective_span.has_value());
}

TEST_CASE("permutativity agrees with the exhaustive permutation check") {
    TestRng rng(777);
    for (std::int64_t r = 2; r <= 12; ++r) {
        for (int trial = 0; trial < 6; ++trial) {
            const LocalRule rule = random_rule(rng, r, 1);
            const auto rep = permutativity(rule);
            const auto brute = testing::brute_force_permutativity(rule);
            CHECK(rep.left_permutative == brute.left);
            CHECK(rep.right_permutative == brute.right);
        }
    }
}

TEST_CASE("effective_span trims zeros, keeps declared span intact") {
    const LocalRule padded(5, -1, 1, {0, 1, 0});
    CHECK(padded.span() == Span{-1, 1});
    CHECK(effective_span(padded) == Span{0, 0});
    CHECK(effective_span(rule90) == Span{-1, 1});
    CHECK_FALSE(effective_span(LocalRule(2, 0, 2, {0, 0, 0})).has_value());
}
