#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "coopcast/model.hpp"
#include "coopcast/network.hpp"

namespace coopcast {

// ---------------------------------------------------------------------------
// Level partition.
//
// The constructive lower bound splits space into levels whose sizes grow
// linearly: 1-D intervals L_k = (s_{k-1}, s_k] with s_k = k(k+1)/2 (so
// |L_k| = k), and 2-D annuli R_k = {r_{k-1} < |x| <= r_k} with
// r_k = sqrt(k(k+1)/2) (so area(R_k) = pi*k exactly). In both cases the
// cumulative measure coordinate is s_k: the position x itself in 1-D and the
// squared radius |x|^2 in 2-D, which keeps level membership tests exact.
// ---------------------------------------------------------------------------

// s_k = k(k+1)/2 (exact in double for every k reachable here).
double level_cumulative(std::uint64_t k);

// Outer boundary of level k: s_k in 1-D, sqrt(s_k) in 2-D.
double level_boundary(int dimension, std::uint64_t k);

// Expected node count in level k: lambda*k (1-D) or pi*lambda*k (2-D).
double level_mean_count(int dimension, double lambda, std::uint64_t k);

// Number of decoded nodes required in level k for the constructive argument:
//   1-D:  ceil((k+1)^alpha)
//   2-D:  ceil(2^alpha * (1 + 2^(alpha/2)))        for k == 1
//         ceil(2^alpha * (k+1)^(alpha/2))          for k >= 2
// Ceilings are evaluated in extended precision and snapped when the power is
// an exact integer.
std::uint64_t required_nodes(int dimension, std::uint64_t k, double alpha);

// Per-level occupancy events: holds[k-1] is true iff level k contains at
// least required_nodes(k) sampled nodes (the source does not count; it sits
// at the origin, outside every level). Requires the window to cover level
// n+1 so a later witness check is meaningful.
std::vector<bool> level_events(const Realization& r, double alpha, std::uint64_t n);

enum class WitnessStatus {
    hypothesis_not_met, // some level event fails; nothing is claimed
    confirmed,          // events hold and the simulation covered levels 1..n+1
    violated            // events hold but the simulation missed a node (a bug)
};

// Checks the constructive guarantee on a concrete realization: if the level
// events 1..n all hold (alpha <= dimension-appropriate limit, p_t == tau),
// the broadcast fixed point must decode every node in levels 1..n+1
// (positive side in 1-D, full annuli in 2-D). A `violated` result would be a
// counterexample and is treated by the test suite as a failure.
WitnessStatus sufficiency_witness(const Realization& r, const ModelParams& params,
                                  std::uint64_t n);

// The power-sum inequality behind the constructive step:
//   sum_{k=1}^{n+1} k^beta >= (sum_{k=1}^{n+1} k)^beta,
// beta = alpha (1-D) or alpha/2 (2-D). Holds for beta <= 1; equality at
// beta == 1.
bool power_sum_inequality_holds(int dimension, std::uint64_t n, double alpha);

// Scans n = 1..n_max incrementally; returns the first violating n, if any.
std::optional<std::uint64_t> first_power_sum_violation(int dimension, std::uint64_t n_max,
                                                       double alpha);

// ---------------------------------------------------------------------------
// Chernoff machinery for the lower bound.
// ---------------------------------------------------------------------------

struct ChernoffStart {
    std::uint64_t N = 0; // first level where the mean count strictly beats the requirement
    double delta = 0.0;  // slack: (1-delta) * mean(N) == required(N), in (0, 1)
};

// Smallest N with level_mean_count(N) > required_nodes(N), plus the matching
// slack. Throws inapplicable_error outside the regime where such N exists:
//   1-D: alpha < 1 (any lambda > 0) or alpha == 1 with lambda > 1
//   2-D: alpha < 2 (any lambda > 0) or alpha == 2 with lambda > 4/pi
ChernoffStart chernoff_start(int dimension, double lambda, double alpha);

// P(Poisson(mu) >= m), absolute error below 1e-12. Stable term recurrence
// anchored in extended precision; safe for large mu.
double poisson_upper_tail(double mu, std::uint64_t m);

// Probability lower bound on the broadcast event, assembled as
//   exact_head       = prod_{k<N}      P(Poisson(c*k) >= required(k))
//   chernoff_body    = prod_{k=N}^{K}  (1 - exp(-c*k*delta^2/2))
//   tail_correction  = max(0, 1 - sum_{k>K} exp(-c*k*delta^2/2))
// with c = lambda (1-D) or pi*lambda (2-D). The 1-D number bounds the
// positive-direction event; 2-D bounds full broadcast (`event` says which).
struct BoundReport {
    int dimension = 1;
    double lambda = 0.0;
    double alpha = 0.0;
    std::uint64_t N = 0;
    double delta = 0.0;
    std::uint64_t K = 0;
    double exact_head = 1.0;
    double chernoff_body = 0.0;
    double tail_correction = 0.0;
    double total = 0.0;
    const char* event = ""; // which broadcast event the number bounds
};

// K chooses the split between the explicit product and the tail bound. By
// default it is the smallest K (>= N) giving tail_correction >= 0.99; an
// explicit K below that may drive tail_correction to 0, which is reported
// (total == 0), not silently hidden.
BoundReport broadcast_lower_bound(int dimension, double lambda, double alpha,
                                  std::optional<std::uint64_t> K = std::nullopt);

// JSON object with fields {dimension, lambda, alpha, N, delta, K, exact_head,
// chernoff_body, tail_correction, total} plus the event label.
void write_bound_report_json(std::ostream& os, const BoundReport& report);

// ---------------------------------------------------------------------------
// Markov machinery for the upper bound (the vanishing regime).
// ---------------------------------------------------------------------------

// Mean aggregate power at the origin from every node beyond distance d,
// under unit transmit power:
//   1-D (one-sided): lambda * d^(1-alpha) / (alpha - 1),  alpha > 1
//   2-D:             2*pi*lambda * d^(2-alpha) / (alpha - 2),  alpha > 2
double tail_power_mean(int dimension, double lambda, double alpha, double d);

// Smallest d whose tail power mean is <= eps/2 (closed-form inversion).
double tail_cutoff_distance(int dimension, double lambda, double alpha, double eps);

// Probability that at least one of N disjoint intervals of length d is empty
// of nodes: 1 - (1 - exp(-lambda*d))^N.
double gap_exists_prob(double lambda, double d, std::uint64_t N);

} // namespace coopcast
