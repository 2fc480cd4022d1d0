#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "coopcast/geometry.hpp"
#include "coopcast/model.hpp"

namespace coopcast {

// Power sum at a receiver. `saturated` marks a transmitter at zero distance
// (the pure path loss law diverges there); a saturated receiver decodes
// regardless of the finite part.
struct PowerSum {
    double value = 0.0;
    bool saturated = false;
};

namespace detail {

// d^-alpha computed from the squared distance. Quarter-integer exponents
// (alpha in {0.5, 1, 1.5, ...}) take a sqrt chain instead of pow; this is
// the innermost loop of the whole simulator.
struct GainFromSquared {
    double alpha;
    bool fast = false;
    int quarters = 0; // alpha*2, i.e. d2 exponent in units of 1/4

    explicit GainFromSquared(double a) : alpha(a) {
        const double q = 2.0 * a;
        const double qr = std::nearbyint(q);
        if (std::abs(q - qr) < 1e-12 && qr >= 1.0 && qr <= 64.0) {
            fast = true;
            quarters = static_cast<int>(qr);
        }
    }

    double operator()(double d2) const {
        if (!fast) return std::pow(d2, -0.5 * alpha);
        const double s = std::sqrt(d2); // d2^(1/2)
        double part;
        switch (quarters & 3) {
            case 0: part = 1.0; break;
            case 1: part = std::sqrt(s); break;       // d2^(1/4)
            case 2: part = s; break;                  // d2^(2/4)
            default: part = s * std::sqrt(s); break;  // d2^(3/4)
        }
        double whole = 1.0;
        for (int i = quarters >> 2; i > 0; --i) whole *= d2;
        return 1.0 / (whole * part);
    }
};

} // namespace detail

// Free-space path gain d^-alpha. Gain at d == 0 is treated as saturation by
// the power-sum routines; calling this directly with d == 0 returns +inf.
inline double path_gain(double d, double alpha) {
    if (d < 0.0 || !std::isfinite(d)) throw std::invalid_argument("path_gain: d must be finite and >= 0");
    if (!(alpha > 0.0)) throw std::invalid_argument("path_gain: alpha must be > 0");
    return std::pow(d, -alpha);
}

// Single-transmitter decode radius r: p_t * r^-alpha == tau.
inline double transmission_radius(const ModelParams& params) {
    params.validate();
    return std::pow(params.p_t / params.tau, 1.0 / params.alpha);
}

// Total received power at `target` from `sources` transmitting simultaneously
// at p_t: p_t * sum_j d_j^-alpha. Summation runs in the given (canonical)
// order under compensated accumulation.
PowerSum received_power(std::span<const Vec2> sources, const Vec2& target,
                        const ModelParams& params, int dimension);

// Cooperative decode rule: received power meets tau, or the receiver is
// saturated. The comparison is exact (>=), no epsilon.
inline bool can_decode(const PowerSum& p, double tau) {
    return p.saturated || p.value >= tau;
}

} // namespace coopcast
