#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "coopcast/propagation.hpp"
#include "coopcast/rng.hpp"

using namespace coopcast;

namespace {

ModelParams params_with(double alpha, double p_t = 1.0, double tau = 1.0) {
    ModelParams p;
    p.alpha = alpha;
    p.p_t = p_t;
    p.tau = tau;
    return p;
}

} // namespace

TEST_CASE("path gain basics") {
    CHECK(path_gain(1.0, 0.5) == doctest::Approx(1.0));
    CHECK(path_gain(1.0, 3.7) == doctest::Approx(1.0));
    CHECK(path_gain(2.0, 2.0) == doctest::Approx(0.25));
    CHECK(std::isinf(path_gain(0.0, 2.0)));
    CHECK_THROWS_AS((void)path_gain(-1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS((void)path_gain(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("transmission radius") {
    for (double a : {0.3, 1.0, 2.0, 5.5})
        CHECK(transmission_radius(params_with(a)) == doctest::Approx(1.0));
    CHECK(transmission_radius(params_with(2.0, 4.0, 1.0)) == doctest::Approx(2.0));
    CHECK(transmission_radius(params_with(3.0, 1.0, 8.0)) == doctest::Approx(0.5));
}

TEST_CASE("received power hand cases") {
    const auto p = params_with(2.0);
    const Vec2 target{0.0, 0.0};

    CHECK(received_power({}, target, p, 1).value == 0.0);
    CHECK_FALSE(can_decode(received_power({}, target, p, 1), p.tau));

    const std::vector<Vec2> sources{{1.0, 0.0}, {2.0, 0.0}};
    const auto sum = received_power(sources, target, p, 1);
    CHECK(sum.value == doctest::Approx(1.25));
    CHECK(can_decode(sum, p.tau));

    // The decode comparison is exact >=: distance exactly r decodes, a hair
    // beyond does not.
    const std::vector<Vec2> at_r{{1.0, 0.0}};
    CHECK(can_decode(received_power(at_r, target, p, 1), p.tau));
    const std::vector<Vec2> beyond{{1.0001, 0.0}};
    CHECK_FALSE(can_decode(received_power(beyond, target, p, 1), p.tau));
}

TEST_CASE("zero distance saturates") {
    const auto p = params_with(2.0, 1.0, 1e12);
    const std::vector<Vec2> sources{{5.0, 0.0}, {0.0, 0.0}};
    const auto sum = received_power(sources, {0.0, 0.0}, p, 1);
    CHECK(sum.saturated);
    CHECK(can_decode(sum, p.tau));
}

TEST_CASE("fast gain path agrees with pow on quarter-integer exponents") {
    Rng rng(7);
    for (double alpha : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0, 7.5, 16.0, 31.5}) {
        const detail::GainFromSquared gain(alpha);
        REQUIRE(gain.fast);
        for (int i = 0; i < 200; ++i) {
            const double d2 = std::exp((uniform01(rng) - 0.5) * 20.0);
            const double want = std::pow(d2, -0.5 * alpha);
            CHECK(gain(d2) == doctest::Approx(want).epsilon(1e-13));
        }
    }
    const detail::GainFromSquared slow(2.3);
    CHECK_FALSE(slow.fast);
    CHECK(slow(4.0) == doctest::Approx(std::pow(2.0, -2.3)));
}

TEST_CASE("summation is permutation-stable") {
    Rng rng(11);
    std::vector<Vec2> sources;
    for (int i = 0; i < 10000; ++i)
        sources.push_back({(uniform01(rng) - 0.5) * 200.0, (uniform01(rng) - 0.5) * 200.0});
    const auto p = params_with(2.0);
    const Vec2 target{0.3, -0.7};
    const double canonical = received_power(sources, target, p, 2).value;
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(sources.begin(), sources.end(), rng);
        const double shuffled = received_power(sources, target, p, 2).value;
        CHECK(std::abs(shuffled - canonical) <= 1e-12 * canonical);
    }
}

TEST_CASE("monotonicity in sources and distance") {
    const auto p = params_with(3.0);
    const Vec2 target{0.0, 0.0};
    std::vector<Vec2> sources{{2.0, 0.0}, {3.0, 0.0}};
    const double base = received_power(sources, target, p, 1).value;
    sources.push_back({5.0, 0.0});
    CHECK(received_power(sources, target, p, 1).value > base);

    const std::vector<Vec2> nearer{{2.0, 0.0}};
    const std::vector<Vec2> farther{{2.5, 0.0}};
    CHECK(received_power(nearer, target, p, 1).value >
          received_power(farther, target, p, 1).value);
}

TEST_CASE("scale covariance of decode verdicts") {
    Rng rng(23);
    const double s = 3.7;
    for (int trial = 0; trial < 50; ++trial) {
        const double alpha = 0.5 + 3.0 * uniform01(rng);
        std::vector<Vec2> sources, scaled;
        for (int i = 0; i < 20; ++i) {
            const Vec2 v{(uniform01(rng) - 0.5) * 10.0, (uniform01(rng) - 0.5) * 10.0};
            sources.push_back(v);
            scaled.push_back({v.x * s, v.y * s});
        }
        const Vec2 target{1.0, 2.0};
        const Vec2 target_s{target.x * s, target.y * s};
        const auto base = params_with(alpha);
        const auto rescaled = params_with(alpha, 1.0, std::pow(s, -alpha));
        CHECK(can_decode(received_power(sources, target, base, 2), base.tau) ==
              can_decode(received_power(scaled, target_s, rescaled, 2), rescaled.tau));
    }
}
