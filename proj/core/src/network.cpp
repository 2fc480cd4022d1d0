#include "coopcast/network.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "coopcast/errors.hpp"
#include "coopcast/rng.hpp"

namespace coopcast {

Realization sample(const ModelParams& params, const Window& window, std::uint64_t seed) {
    params.validate();
    window.validate();

    Realization r;
    r.dimension = window.dimension;
    r.window = window;
    r.lambda = params.lambda;
    r.seed = seed;

    Rng rng(seed);
    const double mu = params.lambda * window.measure();
    const std::uint64_t n = poisson_count(rng, mu);

    r.points.reserve(n + 1);
    for (std::uint64_t i = 0; i < n; ++i) {
        Vec2 p;
        p.x = (2.0 * uniform01(rng) - 1.0) * window.extent;
        if (window.dimension == 2)
            p.y = (2.0 * uniform01(rng) - 1.0) * window.extent;
        r.points.push_back(p);
    }
    r.points.push_back(Vec2{0.0, 0.0}); // source

    std::sort(r.points.begin(), r.points.end(), [](const Vec2& a, const Vec2& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });

    const auto it = std::lower_bound(
        r.points.begin(), r.points.end(), Vec2{0.0, 0.0},
        [](const Vec2& a, const Vec2& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    r.source_index = static_cast<std::size_t>(it - r.points.begin());
    return r;
}

std::vector<double> gaps(const Realization& r) {
    if (r.dimension != 1)
        throw std::invalid_argument("gaps: defined for 1-D realizations only");
    std::vector<double> out;
    if (r.points.size() < 2) return out;
    out.reserve(r.points.size() - 1);
    for (std::size_t i = 1; i < r.points.size(); ++i)
        out.push_back(r.points[i].x - r.points[i - 1].x);
    return out;
}

double nearest_neighbor_dist(const Realization& r, std::size_t i) {
    if (i >= r.points.size())
        throw std::invalid_argument("nearest_neighbor_dist: node index out of range");
    if (r.points.size() < 2)
        throw std::invalid_argument("nearest_neighbor_dist: needs at least two nodes");
    double best2 = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < r.points.size(); ++j) {
        if (j == i) continue;
        best2 = std::min(best2, squared_distance(r.points[i], r.points[j], r.dimension));
    }
    return std::sqrt(best2);
}

void write_realization(std::ostream& os, const Realization& r) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "# dim=%d lambda=%.17g seed=%" PRIu64 "\n",
                  r.dimension, r.lambda, static_cast<std::uint64_t>(r.seed));
    os << buf;
    for (const Vec2& p : r.points) {
        if (r.dimension == 1)
            std::snprintf(buf, sizeof buf, "%.17g\n", p.x);
        else
            std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
        os << buf;
    }
    if (!os) throw io_error("write_realization: stream failure");
}

Realization read_realization(std::istream& is) {
    std::string header;
    if (!std::getline(is, header))
        throw io_error("read_realization: missing header");
    Realization r;
    std::uint64_t seed = 0;
    if (std::sscanf(header.c_str(), "# dim=%d lambda=%lg seed=%" SCNu64, &r.dimension,
                    &r.lambda, &seed) != 3)
        throw io_error("read_realization: malformed header: " + header);
    if (r.dimension != 1 && r.dimension != 2)
        throw io_error("read_realization: bad dimension in header");
    r.seed = seed;

    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Vec2 p;
        if (!(ls >> p.x)) throw io_error("read_realization: malformed node line: " + line);
        if (r.dimension == 2 && !(ls >> p.y))
            throw io_error("read_realization: malformed node line: " + line);
        r.points.push_back(p);
    }
    if (r.points.empty()) throw io_error("read_realization: no nodes");

    // Window extent is not stored; use the tightest symmetric cover.
    double ext = 0.0;
    for (const Vec2& p : r.points)
        ext = std::max({ext, std::abs(p.x), r.dimension == 2 ? std::abs(p.y) : 0.0});
    r.window = Window{r.dimension, ext};

    const auto it = std::find(r.points.begin(), r.points.end(), Vec2{0.0, 0.0});
    if (it == r.points.end())
        throw io_error("read_realization: no source node at the origin");
    r.source_index = static_cast<std::size_t>(it - r.points.begin());
    return r;
}

void save_realization(const std::string& path, const Realization& r) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path);
    write_realization(os, r);
}

Realization load_realization(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open for reading: " + path);
    return read_realization(is);
}

} // namespace coopcast
