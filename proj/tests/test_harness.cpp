#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "coopcast/errors.hpp"
#include "coopcast/harness.hpp"
#include "coopcast/rng.hpp"

using namespace coopcast;

namespace {

ModelParams params_with(double alpha, double lambda) {
    ModelParams p;
    p.alpha = alpha;
    p.lambda = lambda;
    return p;
}

// Synthetic sweep cell with a consistent Wilson interval.
CellResult fake_cell(double alpha, double lambda, double extent, std::uint64_t successes,
                     std::uint64_t trials) {
    CellResult c;
    c.dimension = 1;
    c.alpha = alpha;
    c.lambda = lambda;
    c.extent = extent;
    c.trials = trials;
    c.successes = successes;
    c.p_hat = static_cast<double>(successes) / static_cast<double>(trials);
    const auto ci = wilson_interval(successes, trials);
    c.ci_lo = ci.lo;
    c.ci_hi = ci.hi;
    return c;
}

SweepResult fake_sweep(std::vector<CellResult> cells) {
    SweepResult r;
    r.spec.dimension = 1;
    r.spec.trials = cells.front().trials;
    r.cells = std::move(cells);
    return r;
}

} // namespace

TEST_CASE("metric names round-trip") {
    CHECK(metric_from_name("full_coverage") == CoverageMetric::full_coverage);
    CHECK(metric_from_name("full") == CoverageMetric::full_coverage);
    CHECK(metric_from_name("one_sided_extent") == CoverageMetric::one_sided_extent);
    CHECK(metric_from_name("onesided") == CoverageMetric::one_sided_extent);
    CHECK(metric_from_name(metric_name(CoverageMetric::full_coverage)) ==
          CoverageMetric::full_coverage);
    CHECK_THROWS_AS((void)metric_from_name("both"), std::invalid_argument);
}

TEST_CASE("wilson interval") {
    const auto mid = wilson_interval(50, 100);
    CHECK(mid.lo == doctest::Approx(0.40383).epsilon(1e-3));
    CHECK(mid.hi == doctest::Approx(0.59617).epsilon(1e-3));

    CHECK(wilson_interval(0, 50).lo == 0.0);
    CHECK(wilson_interval(50, 50).hi == 1.0);
    CHECK(wilson_interval(0, 50).hi > 0.0);  // stable near the boundary
    CHECK(wilson_interval(50, 50).lo < 1.0);

    for (std::uint64_t s : {0ULL, 3ULL, 25ULL, 50ULL}) {
        const auto ci = wilson_interval(s, 50);
        const double p = static_cast<double>(s) / 50.0;
        CHECK(ci.lo <= p);
        CHECK(p <= ci.hi);
    }
    CHECK_THROWS_AS((void)wilson_interval(5, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)wilson_interval(5, 4), std::invalid_argument);
}

TEST_CASE("trial seeds are distinct and schedule-free") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_trial_seed(42, i));
    CHECK(seen.size() == 1000);
    CHECK(derive_trial_seed(42, 17) == derive_trial_seed(42, 17));
    CHECK(derive_trial_seed(42, 17) != derive_trial_seed(43, 17));
}

TEST_CASE("parallel_for_index covers every index once and propagates errors") {
    std::vector<int> hits(1000, 0);
    parallel_for_index(1000, 3, [&](std::uint64_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);

    parallel_for_index(0, 3, [&](std::uint64_t) { FAIL("must not be called"); });

    CHECK_THROWS_AS(parallel_for_index(100, 3,
                                       [](std::uint64_t i) {
                                           if (i == 55) throw std::runtime_error("boom");
                                       }),
                    std::runtime_error);
}

TEST_CASE("zero density cell is vacuously covered") {
    const auto cell = estimate_broadcast_prob(params_with(2.0, 0.0), Window{1, 10.0}, 50,
                                              7, CoverageMetric::full_coverage);
    CHECK(cell.successes == 50);
    CHECK(cell.p_hat == 1.0);
    CHECK(cell.mean_reach_frac == 1.0);
}

TEST_CASE("cell estimates are deterministic and thread-count independent") {
    const auto p = params_with(1.5, 2.0);
    const Window w{1, 25.0};
    const auto a = estimate_broadcast_prob(p, w, 120, 99, CoverageMetric::full_coverage, 1);
    const auto b = estimate_broadcast_prob(p, w, 120, 99, CoverageMetric::full_coverage, 3);
    const auto c = estimate_broadcast_prob(p, w, 120, 99, CoverageMetric::full_coverage, 0);
    CHECK(a.successes == b.successes);
    CHECK(a.successes == c.successes);
    CHECK(a.mean_reach_frac == b.mean_reach_frac); // bitwise: canonical aggregation
    CHECK(a.mean_extent == b.mean_extent);

    const auto d = estimate_broadcast_prob(p, w, 120, 100, CoverageMetric::full_coverage);
    CHECK((d.successes != a.successes || d.mean_extent != a.mean_extent));
}

TEST_CASE("cell invariants and qualitative strong-attenuation behavior") {
    const auto cell = estimate_broadcast_prob(params_with(3.0, 2.0), Window{1, 50.0}, 200,
                                              5, CoverageMetric::full_coverage);
    CHECK(cell.ci_lo <= cell.p_hat);
    CHECK(cell.p_hat <= cell.ci_hi);
    CHECK(cell.mean_reach_frac >= 0.0);
    CHECK(cell.mean_reach_frac <= 1.0);
    CHECK(cell.p_hat < 0.3); // strong attenuation: gaps isolate the source
}

TEST_CASE("metric preconditions") {
    CHECK_THROWS_AS((void)estimate_broadcast_prob(params_with(2.0, 1.0), Window{2, 5.0}, 10,
                                                  1, CoverageMetric::one_sided_extent),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)estimate_broadcast_prob(params_with(2.0, 1.0), Window{1, 5.0}, 0,
                                                  1, CoverageMetric::full_coverage),
                    std::invalid_argument);
}

TEST_CASE("one-cell sweep equals a direct estimate") {
    SweepSpec spec;
    spec.dimension = 1;
    spec.alphas = {2.0};
    spec.lambdas = {1.0};
    spec.extents = {10.0};
    spec.trials = 60;
    spec.master_seed = 11;
    const auto sweep = run_sweep(spec);
    REQUIRE(sweep.cells.size() == 1);
    const auto direct = estimate_broadcast_prob(params_with(2.0, 1.0), Window{1, 10.0}, 60,
                                                11, CoverageMetric::full_coverage);
    CHECK(sweep.cells[0].successes == direct.successes);
    CHECK(sweep.cells[0].mean_extent == direct.mean_extent);
}

TEST_CASE("sweep nests alpha, lambda, extent in order") {
    SweepSpec spec;
    spec.dimension = 1;
    spec.alphas = {3.0, 2.0};
    spec.lambdas = {0.5};
    spec.extents = {5.0, 10.0};
    spec.trials = 5;
    spec.master_seed = 1;
    const auto sweep = run_sweep(spec);
    REQUIRE(sweep.cells.size() == 4);
    CHECK(sweep.cells[0].alpha == 3.0);
    CHECK(sweep.cells[0].extent == 5.0);
    CHECK(sweep.cells[1].alpha == 3.0);
    CHECK(sweep.cells[1].extent == 10.0);
    CHECK(sweep.cells[2].alpha == 2.0);
    CHECK(sweep.cells[3].extent == 10.0);
}

TEST_CASE("sweep spec validation") {
    SweepSpec spec;
    spec.dimension = 3;
    spec.alphas = {1.0};
    spec.lambdas = {1.0};
    spec.extents = {1.0};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.dimension = 2;
    spec.metric = CoverageMetric::one_sided_extent;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.metric = CoverageMetric::full_coverage;
    spec.alphas = {};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("sweep CSV has the pinned header and parses back") {
    SweepSpec spec;
    spec.dimension = 1;
    spec.alphas = {2.0};
    spec.lambdas = {1.0};
    spec.extents = {5.0, 10.0};
    spec.trials = 20;
    spec.master_seed = 3;
    const auto sweep = run_sweep(spec);
    std::stringstream ss;
    write_sweep_csv(ss, sweep);
    std::string line;
    REQUIRE(std::getline(ss, line));
    CHECK(line ==
          "dim,alpha,lambda,extent,trials,successes,p_hat,ci_lo,ci_hi,"
          "mean_reach_frac,mean_extent,seed");
    int rows = 0;
    while (std::getline(ss, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 11);
    }
    CHECK(rows == 2);
}

TEST_CASE("sweep JSON carries metadata") {
    SweepSpec spec;
    spec.dimension = 1;
    spec.alphas = {2.0};
    spec.lambdas = {0.5};
    spec.extents = {5.0};
    spec.trials = 10;
    spec.master_seed = 21;
    const auto sweep = run_sweep(spec);
    std::stringstream ss;
    write_sweep_json(ss, sweep);
    const auto j = nlohmann::json::parse(ss.str());
    CHECK(j["seed_hash"] == "splitmix64");
    CHECK(j["metric"] == "full_coverage");
    REQUIRE(j["cells"].size() == 1);
    CHECK(j["cells"][0]["seed"] == 21);
    CHECK(j.contains("monotonicity_flags"));
}

TEST_CASE("sweep spec JSON parsing") {
    std::stringstream good(R"({"dimension": 1, "alphas": [1.0, 2.0], "lambdas": [2.0],
         "extents": [25.0, 50.0], "trials": 10, "master_seed": 5, "metric": "onesided"})");
    const auto spec = read_sweep_spec(good);
    CHECK(spec.dimension == 1);
    CHECK(spec.alphas.size() == 2);
    CHECK(spec.metric == CoverageMetric::one_sided_extent);

    std::stringstream garbage("this is not json");
    CHECK_THROWS_AS((void)read_sweep_spec(garbage), io_error);

    std::stringstream missing(R"({"dimension": 1, "alphas": [1.0]})");
    CHECK_THROWS_AS((void)read_sweep_spec(missing), std::invalid_argument);

    std::stringstream badmetric(R"({"dimension": 1, "alphas": [1.0], "lambdas": [1.0],
         "extents": [5.0], "trials": 1, "master_seed": 1, "metric": "sideways"})");
    CHECK_THROWS_AS((void)read_sweep_spec(badmetric), std::invalid_argument);

    CHECK_THROWS_AS((void)load_sweep_spec("/nonexistent/spec.json"), io_error);
}

TEST_CASE("regime classification on synthetic sweeps") {
    const auto vanishing = classify_regimes(fake_sweep({
        fake_cell(2.0, 2.0, 25.0, 80, 100),
        fake_cell(2.0, 2.0, 50.0, 40, 100),
        fake_cell(2.0, 2.0, 100.0, 10, 100),
    }));
    REQUIRE(vanishing.size() == 1);
    CHECK(vanishing[0].regime == Regime::vanishing);

    const auto persistent = classify_regimes(fake_sweep({
        fake_cell(0.5, 2.0, 25.0, 80, 100),
        fake_cell(0.5, 2.0, 50.0, 78, 100),
        fake_cell(0.5, 2.0, 100.0, 82, 100),
    }));
    CHECK(persistent[0].regime == Regime::persistent);

    // A significant rise with window size matches neither story.
    const auto rising = classify_regimes(fake_sweep({
        fake_cell(1.0, 2.0, 25.0, 10, 100),
        fake_cell(1.0, 2.0, 50.0, 50, 100),
        fake_cell(1.0, 2.0, 100.0, 90, 100),
    }));
    CHECK(rising[0].regime == Regime::inconclusive);

    // Halving wins over a persistent-looking top pair.
    const auto both = classify_regimes(fake_sweep({
        fake_cell(2.0, 2.0, 25.0, 80, 100),
        fake_cell(2.0, 2.0, 50.0, 40, 100),
        fake_cell(2.0, 2.0, 100.0, 30, 100),
    }));
    CHECK(both[0].regime == Regime::vanishing);

    CHECK_THROWS_AS((void)classify_regimes(fake_sweep({
                        fake_cell(1.0, 1.0, 25.0, 5, 10),
                        fake_cell(1.0, 1.0, 50.0, 5, 10),
                    })),
                    std::invalid_argument);
}

TEST_CASE("default window schedules") {
    CHECK(default_extents(1) == std::vector<double>{25.0, 50.0, 100.0, 200.0});
    CHECK(default_extents(2) == std::vector<double>{5.0, 10.0, 15.0, 20.0});
    CHECK_THROWS_AS((void)default_extents(3), std::invalid_argument);
}

TEST_CASE("reference grid shape") {
    const auto grid = reference_grid();
    REQUIRE(grid.size() == 6);
    int one_d = 0, boundary = 0, vanish = 0;
    for (const auto& cell : grid) {
        one_d += cell.dimension == 1;
        boundary += cell.boundary;
        vanish += cell.expected == Regime::vanishing;
        if (cell.boundary) CHECK(cell.expected == Regime::persistent);
    }
    CHECK(one_d == 3);
    CHECK(boundary == 2);
    CHECK(vanish == 2);
}

TEST_CASE("reference grid smoke run") {
    const auto outcomes = run_reference_grid(2, 3, 0);
    REQUIRE(outcomes.size() == 6);
    for (const auto& out : outcomes) {
        CHECK(out.cells.size() == 4);
        for (const auto& c : out.cells) {
            CHECK(c.trials == 2);
            CHECK(c.ci_lo <= c.p_hat);
            CHECK(c.p_hat <= c.ci_hi);
        }
    }
}
