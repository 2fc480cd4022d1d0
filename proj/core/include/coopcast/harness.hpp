#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "coopcast/broadcast.hpp"
#include "coopcast/model.hpp"

namespace coopcast {

enum class CoverageMetric {
    full_coverage,    // every node decoded
    one_sided_extent  // 1-D: decoded region reaches 0.9 * extent rightward
};

const char* metric_name(CoverageMetric m);
CoverageMetric metric_from_name(const std::string& name);

// 95% Wilson score interval; always contains successes/trials.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials);

// One Monte Carlo cell. Trial i uses derive_trial_seed(master_seed, i), so
// the cell is reproducible from this row alone and results never depend on
// thread scheduling.
struct CellResult {
    int dimension = 1;
    double alpha = 0.0;
    double lambda = 0.0;
    double extent = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double p_hat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double mean_reach_frac = 0.0; // mean decoded fraction per trial
    double mean_extent = 0.0;     // mean furthest decoded distance from origin
    std::uint64_t master_seed = 0;
};

// Runs `trials` independent realizations under the normalization given in
// params. threads == 0 picks hardware concurrency; the outcome is identical
// for any thread count.
CellResult estimate_broadcast_prob(const ModelParams& params, const Window& window,
                                   std::uint64_t trials, std::uint64_t master_seed,
                                   CoverageMetric metric, int threads = 0);

// Cartesian sweep over alpha x lambda x extent at p_t == tau == 1. Every
// cell reuses the sweep master seed (common random numbers; any cell can be
// reproduced in isolation).
struct SweepSpec {
    int dimension = 1;
    std::vector<double> alphas;
    std::vector<double> lambdas;
    std::vector<double> extents;
    std::uint64_t trials = 100;
    std::uint64_t master_seed = 1;
    CoverageMetric metric = CoverageMetric::full_coverage;

    void validate() const;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<CellResult> cells;
    // Cells whose interval sits strictly above the previous (smaller) extent
    // at the same (alpha, lambda): a significant monotonicity violation.
    std::vector<std::size_t> monotonicity_flags;
};

SweepResult run_sweep(const SweepSpec& spec, int threads = 0);

// CSV with the exact header
// dim,alpha,lambda,extent,trials,successes,p_hat,ci_lo,ci_hi,mean_reach_frac,mean_extent,seed
void write_sweep_csv(std::ostream& os, const SweepResult& result);

// JSON variant; carries run metadata (seed hash id, metric) and the flags.
void write_sweep_json(std::ostream& os, const SweepResult& result);

// Sweep spec as JSON: {dimension, alphas, lambdas, extents, trials,
// master_seed, metric}.
SweepSpec read_sweep_spec(std::istream& is);
SweepSpec load_sweep_spec(const std::string& path);

// ---------------------------------------------------------------------------
// Regime classification across window sizes.
// ---------------------------------------------------------------------------

enum class Regime { vanishing, persistent, inconclusive };
const char* regime_name(Regime r);

struct RegimeThresholds {
    double vanish_ratio = 0.5;  // largest-window p_hat must fall below ratio * smallest
    double persist_floor = 0.05;
};

struct RegimeCall {
    int dimension = 1;
    double alpha = 0.0;
    double lambda = 0.0;
    Regime regime = Regime::inconclusive;
    std::vector<double> extents; // ascending
    std::vector<double> p_hats;  // matching order
};

// Per (alpha, lambda) group with at least three extents:
//   vanishing:  p_hat(largest) < ratio * p_hat(smallest) and no significant
//               increase between consecutive extents
//   persistent: the two largest windows' intervals overlap and every p_hat
//               stays above the floor
//   otherwise inconclusive. Vanishing is tested first.
std::vector<RegimeCall> classify_regimes(const SweepResult& result,
                                         const RegimeThresholds& thresholds = {});

// ---------------------------------------------------------------------------
// Reference grid: the six qualitative regime cells (three per dimension).
// ---------------------------------------------------------------------------

std::vector<double> default_extents(int dimension); // {25,50,100,200} or {5,10,15,20}

struct ReferenceCell {
    int dimension;
    const char* row;     // human-readable regime condition
    double alpha;
    double lambda;
    Regime expected;
    bool boundary;       // boundary rows may legitimately come out inconclusive
};

// Representative (alpha, lambda) per regime row. The vanishing-side picks
// are chosen so the decay is visible at the default window schedule; see the
// README for the calibration reasoning.
std::vector<ReferenceCell> reference_grid();

struct ReferenceOutcome {
    ReferenceCell cell;
    Regime observed = Regime::inconclusive;
    std::vector<CellResult> cells;
    bool matched = false;
};

std::vector<ReferenceOutcome> run_reference_grid(std::uint64_t trials,
                                                 std::uint64_t master_seed, int threads = 0);

void write_reference_report(std::ostream& os, const std::vector<ReferenceOutcome>& outcomes);

// Block-partitioned index parallelism used by the harness; exposed for tests
// and tools. threads == 0 picks hardware concurrency.
void parallel_for_index(std::uint64_t count, int threads,
                        const std::function<void(std::uint64_t)>& fn);

} // namespace coopcast
