#pragma once

#include <cmath>
#include <stdexcept>

namespace coopcast {

// Physical parameters shared by the sampler, the propagation rule and the
// broadcast engine. The usual normalization is p_t == tau, which makes the
// single-transmitter decode radius exactly 1.
struct ModelParams {
    double lambda = 1.0; // node density, >= 0
    double alpha = 2.0;  // path loss exponent, > 0
    double p_t = 1.0;    // per-node transmit power, > 0
    double tau = 1.0;    // decode threshold, > 0

    void validate() const {
        if (!(lambda >= 0.0) || !std::isfinite(lambda))
            throw std::invalid_argument("lambda must be finite and >= 0");
        if (!(alpha > 0.0) || !std::isfinite(alpha))
            throw std::invalid_argument("alpha must be finite and > 0");
        if (!(p_t > 0.0) || !std::isfinite(p_t))
            throw std::invalid_argument("p_t must be finite and > 0");
        if (!(tau > 0.0) || !std::isfinite(tau))
            throw std::invalid_argument("tau must be finite and > 0");
    }
};

} // namespace coopcast
