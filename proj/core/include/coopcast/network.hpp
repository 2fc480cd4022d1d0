#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "coopcast/geometry.hpp"
#include "coopcast/model.hpp"

namespace coopcast {

// One sampled network: a homogeneous Poisson point set on the window plus
// the source node pinned at the origin (Palm conditioning; by Slivnyak's
// theorem the remaining points are an unconditioned Poisson process).
//
// Points are sorted by coordinate (lexicographically in 2-D); the source is
// points[source_index] and sits exactly at the origin. Coincident points are
// kept as distinct nodes.
struct Realization {
    int dimension = 1;
    Window window;
    double lambda = 0.0;
    std::uint64_t seed = 0;
    std::vector<Vec2> points;
    std::size_t source_index = 0;

    std::size_t size() const { return points.size(); }
};

// Draw a realization. Node count is Poisson(lambda * |window|); positions
// are i.i.d. uniform. Deterministic: equal (params, window, seed) give a
// bit-identical Realization.
Realization sample(const ModelParams& params, const Window& window, std::uint64_t seed);

// Consecutive differences of the sorted coordinates, length size()-1.
// 1-D only. Interior gaps of a Poisson process are Exp(lambda).
std::vector<double> gaps(const Realization& r);

// Distance from node i to its nearest distinct node. Requires >= 2 nodes.
double nearest_neighbor_dist(const Realization& r, std::size_t i);

// Text format: header line "# dim=<1|2> lambda=<v> seed=<v>", then one node
// per line (x, or x y), full round-trip precision.
void write_realization(std::ostream& os, const Realization& r);
Realization read_realization(std::istream& is);

void save_realization(const std::string& path, const Realization& r);
Realization load_realization(const std::string& path);

} // namespace coopcast
