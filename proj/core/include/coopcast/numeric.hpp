#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "coopcast/errors.hpp"

namespace coopcast {

// Kahan compensated accumulator. Keeps long sums of positive terms accurate
// to ~1 ulp independent of length, which is what lets the incremental
// broadcast engine agree with the naive oracle to 1e-12.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }

    double value() const { return sum; }
};

namespace detail {

struct SimpsonCtx {
    const std::function<double(double)>* f;
    double abs_tol;
    int max_depth;
    double achieved = 0.0; // accumulated error estimate
    bool depth_hit = false;
};

inline double simpson_rec(SimpsonCtx& ctx, double a, double m, double b,
                          double fa, double fm, double fb, double whole,
                          double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = (*ctx.f)(lm);
    const double frm = (*ctx.f)(rm);
    const double h6 = (b - a) / 12.0;
    const double left = h6 * (fa + 4.0 * flm + fm);
    const double right = h6 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth >= ctx.max_depth) {
        if (depth >= ctx.max_depth && std::abs(delta) > 15.0 * tol) ctx.depth_hit = true;
        ctx.achieved += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return simpson_rec(ctx, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
         + simpson_rec(ctx, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

} // namespace detail

// Adaptive Simpson quadrature with a relative error target. Throws
// invariant_error reporting the achieved error estimate if the recursion
// depth cap is hit before the target is met.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double rel_tol, int max_depth = 52) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // Seed the absolute tolerance from a coarse magnitude estimate; refine
    // once if the converged value disagrees badly with the seed.
    double scale = std::abs(whole);
    for (int pass = 0; pass < 2; ++pass) {
        detail::SimpsonCtx ctx{&f, 0.0, max_depth};
        const double tol = std::max(rel_tol * std::max(scale, 1e-300), 1e-300);
        double result = detail::simpson_rec(ctx, a, m, b, fa, fm, fb, whole, tol, 0);
        const double mag = std::max(std::abs(result), 1e-300);
        if (ctx.depth_hit && ctx.achieved > rel_tol * mag) {
            throw invariant_error("quadrature did not converge: achieved relative error "
                                  + std::to_string(ctx.achieved / mag) + " on [" +
                                  std::to_string(a) + ", " + std::to_string(b) + "]");
        }
        if (std::abs(result) > 4.0 * scale || std::abs(result) < 0.25 * scale) {
            scale = std::abs(result); // magnitude estimate was off; one more pass
            continue;
        }
        return result;
    }
    // Second pass result path: rerun once more with the final scale.
    detail::SimpsonCtx ctx{&f, 0.0, max_depth};
    const double tol = std::max(rel_tol * std::max(scale, 1e-300), 1e-300);
    double result = detail::simpson_rec(ctx, a, m, b, fa, fm, fb, whole, tol, 0);
    return result;
}

// Largest x > lo satisfying a monotone (true then false) predicate, located
// by doubling bracket expansion followed by bisection to rel_tol on x.
// Returns the true-side endpoint. Requires pred(lo) == true.
inline double bisect_frontier(const std::function<bool(double)>& pred, double lo,
                              double initial_step, double rel_tol) {
    if (!pred(lo)) throw std::invalid_argument("bisect_frontier: predicate false at bracket start");
    double step = initial_step;
    double hi = lo + step;
    int expansions = 0;
    while (pred(hi)) {
        lo = hi;
        step *= 2.0;
        hi = lo + step;
        if (++expansions > 200) throw invariant_error("bisect_frontier: no upper bracket found");
    }
    while (hi - lo > rel_tol * std::max(1.0, std::abs(lo))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // double resolution exhausted
        (pred(mid) ? lo : hi) = mid;
    }
    return lo;
}

} // namespace coopcast
