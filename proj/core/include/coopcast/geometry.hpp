#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace coopcast {

// A point in the plane. 1-D networks use x only and keep y == 0.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2& a, const Vec2& b) {
        return a.x == b.x && a.y == b.y;
    }
};

// Symmetric observation window centered on the origin:
// [-extent, extent] in 1-D, [-extent, extent]^2 in 2-D.
struct Window {
    int dimension = 1;   // 1 or 2
    double extent = 0.0; // half-width, >= 0

    void validate() const {
        if (dimension != 1 && dimension != 2)
            throw std::invalid_argument("window dimension must be 1 or 2");
        if (!(extent >= 0.0) || !std::isfinite(extent))
            throw std::invalid_argument("window extent must be finite and >= 0");
    }

    // Lebesgue measure: length in 1-D, area in 2-D.
    double measure() const {
        return dimension == 1 ? 2.0 * extent : 4.0 * extent * extent;
    }

    bool contains(const Vec2& p) const {
        if (dimension == 1) return std::abs(p.x) <= extent;
        return std::abs(p.x) <= extent && std::abs(p.y) <= extent;
    }
};

inline double squared_distance(const Vec2& a, const Vec2& b, int dimension) {
    const double dx = a.x - b.x;
    if (dimension == 1) return dx * dx;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double distance(const Vec2& a, const Vec2& b, int dimension) {
    return std::sqrt(squared_distance(a, b, dimension));
}

} // namespace coopcast
