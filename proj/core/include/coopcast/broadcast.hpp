#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "coopcast/network.hpp"
#include "coopcast/propagation.hpp"

namespace coopcast {

inline constexpr std::int32_t kNeverDecoded = -1;

// Result of running the cooperative broadcast to its fixed point.
// decode_round[i] is 0 for the source, t >= 1 for nodes first decodable in
// round t, kNeverDecoded otherwise. `rounds` counts productive rounds only,
// so rounds <= size()-1 always holds.
struct BroadcastOutcome {
    std::vector<std::int32_t> decode_round;
    std::int32_t rounds = 0;
    bool full_coverage = false;
    std::size_t reached_count = 0;
    double max_extent = 0.0; // max distance from the origin over decoded nodes

    // Final accumulated gain sum per node (decode check is p_t*power >= tau).
    // Kept for cross-checking the incremental and oracle paths.
    std::vector<double> final_power;
};

// Fixed point of D <- D union {k : p_t * sum_{j in D} d_jk^-alpha >= tau},
// starting from the source. Incremental: each round adds only the newly
// decoded nodes' contributions to per-node compensated accumulators, so the
// total work is O(n * decoded).
BroadcastOutcome run_broadcast(const Realization& r, const ModelParams& params);

// Same fixed point, recomputing every power sum from scratch each round in
// canonical node order. O(n^2 * rounds); reference implementation for tests.
BroadcastOutcome run_broadcast_oracle(const Realization& r, const ModelParams& params);

// Furthest decoded coordinate in the positive direction (1-D), 0 if only the
// source decoded.
double positive_extent(const Realization& r, const BroadcastOutcome& o);

// CSV: header then one row per node, "node_index,x[,y],decode_round".
// Never-decoded nodes carry decode_round -1.
void write_outcome_csv(std::ostream& os, const Realization& r, const BroadcastOutcome& o);

} // namespace coopcast
