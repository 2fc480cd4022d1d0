// Shared helpers for the test binaries: manual realization construction,
// Kolmogorov-Smirnov distance, and small Monte Carlo utilities.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "coopcast/network.hpp"
#include "coopcast/rng.hpp"

namespace testsupport {

// Builds a 1-D realization from explicit coordinates. Must include 0 (the
// source). Window extent defaults to covering all points.
inline coopcast::Realization make_1d(std::vector<double> xs, double lambda = 1.0,
                                     double extent = -1.0) {
    coopcast::Realization r;
    r.dimension = 1;
    r.lambda = lambda;
    std::sort(xs.begin(), xs.end());
    double span = 0.0;
    for (double x : xs) {
        r.points.push_back({x, 0.0});
        span = std::max(span, std::abs(x));
    }
    r.window = coopcast::Window{1, extent >= 0.0 ? extent : span};
    r.source_index = static_cast<std::size_t>(
        std::lower_bound(xs.begin(), xs.end(), 0.0) - xs.begin());
    return r;
}

inline coopcast::Realization make_2d(std::vector<coopcast::Vec2> ps, double lambda = 1.0,
                                     double extent = -1.0) {
    coopcast::Realization r;
    r.dimension = 2;
    r.lambda = lambda;
    std::sort(ps.begin(), ps.end(), [](const coopcast::Vec2& a, const coopcast::Vec2& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    double span = 0.0;
    for (const auto& p : ps) span = std::max({span, std::abs(p.x), std::abs(p.y)});
    r.points = std::move(ps);
    r.window = coopcast::Window{2, extent >= 0.0 ? extent : span};
    for (std::size_t i = 0; i < r.points.size(); ++i)
        if (r.points[i] == coopcast::Vec2{0.0, 0.0}) r.source_index = i;
    return r;
}

// Supremum distance between the empirical CDF of `samples` and `cdf`.
inline double ks_distance(std::vector<double> samples,
                          const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

struct MeanVar {
    double mean = 0.0;
    double var = 0.0; // unbiased sample variance
    double se = 0.0;  // standard error of the mean
};

inline MeanVar mean_var(const std::vector<double>& xs) {
    MeanVar mv;
    const double n = static_cast<double>(xs.size());
    for (double x : xs) mv.mean += x;
    mv.mean /= n;
    for (double x : xs) mv.var += (x - mv.mean) * (x - mv.mean);
    mv.var /= (n - 1.0);
    mv.se = std::sqrt(mv.var / n);
    return mv;
}

// Poisson process on the interval [a, b] with intensity lambda, sorted.
inline std::vector<double> poisson_on_interval(coopcast::Rng& rng, double lambda,
                                               double a, double b) {
    std::vector<double> xs;
    double x = a + coopcast::exponential1(rng) / lambda;
    while (x <= b) {
        xs.push_back(x);
        x += coopcast::exponential1(rng) / lambda;
    }
    return xs;
}

} // namespace testsupport
