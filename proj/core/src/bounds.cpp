#include "coopcast/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "coopcast/broadcast.hpp"
#include "coopcast/errors.hpp"

namespace coopcast {

namespace {

constexpr double kPi = std::numbers::pi;

void check_dimension(int dimension) {
    if (dimension != 1 && dimension != 2)
        throw std::invalid_argument("dimension must be 1 or 2");
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("alpha must be finite and > 0");
}

// Cumulative level coordinate of a point: position in 1-D (positive side
// only), squared radius in 2-D. Level k is (s_{k-1}, s_k] in this coordinate.
double cumulative_coordinate(const Vec2& p, int dimension) {
    return dimension == 1 ? p.x : p.x * p.x + p.y * p.y;
}

} // namespace

double level_cumulative(std::uint64_t k) {
    return 0.5 * static_cast<double>(k) * static_cast<double>(k + 1);
}

double level_boundary(int dimension, std::uint64_t k) {
    check_dimension(dimension);
    const double s = level_cumulative(k);
    return dimension == 1 ? s : std::sqrt(s);
}

double level_mean_count(int dimension, double lambda, std::uint64_t k) {
    check_dimension(dimension);
    const double base = lambda * static_cast<double>(k);
    return dimension == 1 ? base : kPi * base;
}

std::uint64_t required_nodes(int dimension, std::uint64_t k, double alpha) {
    check_dimension(dimension);
    check_alpha(alpha);
    if (k < 1) throw std::invalid_argument("required_nodes: k must be >= 1");

    const long double a = static_cast<long double>(alpha);
    long double v;
    if (dimension == 1) {
        v = powl(static_cast<long double>(k) + 1.0L, a);
    } else if (k == 1) {
        v = powl(2.0L, a) * (1.0L + powl(2.0L, 0.5L * a));
    } else {
        v = powl(2.0L, a) * powl(static_cast<long double>(k) + 1.0L, 0.5L * a);
    }
    if (!(v < 9.0e18L))
        throw std::overflow_error("required_nodes: requirement exceeds 64-bit range");

    // Snap to the nearest integer when the power is an exact integer up to
    // rounding; otherwise take the true ceiling.
    const long double r = nearbyintl(v);
    const long double tol = 1e-9L * std::max(1.0L, fabsl(v));
    const long double c = (fabsl(v - r) <= tol) ? r : ceill(v);
    return static_cast<std::uint64_t>(c);
}

std::vector<bool> level_events(const Realization& r, double alpha, std::uint64_t n) {
    check_alpha(alpha);
    if (n < 1) throw std::invalid_argument("level_events: n must be >= 1");
    if (r.window.extent < level_boundary(r.dimension, n + 1))
        throw std::invalid_argument("level_events: window too small to cover levels 1.." +
                                    std::to_string(n + 1));

    std::vector<double> s(n + 1);
    for (std::uint64_t k = 0; k <= n; ++k) s[k] = level_cumulative(k);

    std::vector<std::uint64_t> counts(n, 0);
    for (const Vec2& p : r.points) {
        const double v = cumulative_coordinate(p, r.dimension);
        if (!(v > 0.0) || v > s[n]) continue;
        // First k with s_k >= v; membership in (s_{k-1}, s_k] is exact.
        const auto it = std::lower_bound(s.begin() + 1, s.end(), v);
        ++counts[static_cast<std::size_t>(it - s.begin()) - 1];
    }

    std::vector<bool> holds(n);
    for (std::uint64_t k = 1; k <= n; ++k)
        holds[k - 1] = counts[k - 1] >= required_nodes(r.dimension, k, alpha);
    return holds;
}

WitnessStatus sufficiency_witness(const Realization& r, const ModelParams& params,
                                  std::uint64_t n) {
    params.validate();
    const double alpha_limit = r.dimension == 1 ? 1.0 : 2.0;
    if (params.alpha > alpha_limit)
        throw inapplicable_error("sufficiency_witness: requires alpha <= " +
                                 std::to_string(alpha_limit) + " in " +
                                 std::to_string(r.dimension) + "-D");
    if (params.p_t != params.tau)
        throw std::invalid_argument("sufficiency_witness: requires p_t == tau");

    const std::vector<bool> events = level_events(r, params.alpha, n);
    if (!std::all_of(events.begin(), events.end(), [](bool b) { return b; }))
        return WitnessStatus::hypothesis_not_met;

    const BroadcastOutcome o = run_broadcast(r, params);
    const double s_guarantee = level_cumulative(n + 1);
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        const double v = cumulative_coordinate(r.points[i], r.dimension);
        if (v > 0.0 && v <= s_guarantee && o.decode_round[i] == kNeverDecoded)
            return WitnessStatus::violated;
    }
    return WitnessStatus::confirmed;
}

namespace {

long double sum_exponent(int dimension, double alpha) {
    return dimension == 1 ? static_cast<long double>(alpha)
                          : 0.5L * static_cast<long double>(alpha);
}

bool sum_inequality_at(long double s1, long double s2, long double beta) {
    // Tiny relative slack so the exact-equality case (beta == 1) cannot flip
    // on rounding; genuine violations overshoot by far more.
    return s1 >= powl(s2, beta) * (1.0L - 1e-12L);
}

} // namespace

bool power_sum_inequality_holds(int dimension, std::uint64_t n, double alpha) {
    check_dimension(dimension);
    check_alpha(alpha);
    if (n < 1) throw std::invalid_argument("power_sum_inequality_holds: n must be >= 1");
    const long double beta = sum_exponent(dimension, alpha);
    long double s1 = 0.0L, s2 = 0.0L;
    for (std::uint64_t k = 1; k <= n + 1; ++k) {
        s1 += powl(static_cast<long double>(k), beta);
        s2 += static_cast<long double>(k);
    }
    return sum_inequality_at(s1, s2, beta);
}

std::optional<std::uint64_t> first_power_sum_violation(int dimension, std::uint64_t n_max,
                                                       double alpha) {
    check_dimension(dimension);
    check_alpha(alpha);
    const long double beta = sum_exponent(dimension, alpha);
    long double s1 = 1.0L, s2 = 1.0L; // sums up to k = 1
    for (std::uint64_t m = 2; m <= n_max + 1; ++m) {
        s1 += powl(static_cast<long double>(m), beta);
        s2 += static_cast<long double>(m);
        if (!sum_inequality_at(s1, s2, beta)) return m - 1;
    }
    return std::nullopt;
}

ChernoffStart chernoff_start(int dimension, double lambda, double alpha) {
    check_dimension(dimension);
    check_alpha(alpha);
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("chernoff_start: lambda must be finite and > 0");

    const double alpha_limit = dimension == 1 ? 1.0 : 2.0;
    const double lambda_limit = dimension == 1 ? 1.0 : 4.0 / kPi;
    const bool applicable =
        alpha < alpha_limit || (alpha == alpha_limit && lambda > lambda_limit);
    if (!applicable)
        throw inapplicable_error(
            "bound inapplicable: " + std::to_string(dimension) + "-D requires alpha < " +
            std::to_string(alpha_limit) + ", or alpha == " + std::to_string(alpha_limit) +
            " with lambda > " + std::to_string(lambda_limit));

    constexpr std::uint64_t kSearchCap = 100000000;
    for (std::uint64_t k = 1; k <= kSearchCap; ++k) {
        const double mean = level_mean_count(dimension, lambda, k);
        const double req = static_cast<double>(required_nodes(dimension, k, alpha));
        if (mean > req) {
            ChernoffStart cs;
            cs.N = k;
            cs.delta = 1.0 - req / mean;
            if (!(cs.delta > 0.0 && cs.delta < 1.0))
                throw invariant_error("chernoff_start: delta outside (0,1)");
            return cs;
        }
    }
    throw inapplicable_error("bound inapplicable at practical scale: no start level within " +
                             std::to_string(kSearchCap));
}

double poisson_upper_tail(double mu, std::uint64_t m) {
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw std::invalid_argument("poisson_upper_tail: mu must be finite and >= 0");
    if (m == 0) return 1.0;
    if (mu == 0.0) return 0.0;

    const long double lmu = static_cast<long double>(mu);
    const auto log_pmf = [&](std::uint64_t j) {
        return -lmu + static_cast<long double>(j) * logl(lmu) -
               lgammal(static_cast<long double>(j) + 1.0L);
    };

    if (static_cast<long double>(m) <= lmu) {
        // Large tail: return 1 - P(X <= m-1), summing the lower side downward
        // from its largest term.
        long double t = expl(log_pmf(m - 1));
        long double s = t;
        for (std::uint64_t j = m - 1; j >= 1 && t > 0.0L; --j) {
            t *= static_cast<long double>(j) / lmu; // pmf(j-1)
            s += t;
            if (t < s * 1e-25L) break;
        }
        const double lower = static_cast<double>(s);
        return lower >= 1.0 ? 0.0 : 1.0 - lower;
    }

    // Small tail: sum upward from pmf(m); terms decay since m > mu.
    long double t = expl(log_pmf(m));
    long double s = t;
    for (std::uint64_t j = m; t > 0.0L; ++j) {
        t *= lmu / (static_cast<long double>(j) + 1.0L);
        s += t;
        if (t < s * 1e-25L) break;
    }
    const double tail = static_cast<double>(s);
    return tail <= 1.0 ? tail : 1.0;
}

BoundReport broadcast_lower_bound(int dimension, double lambda, double alpha,
                                  std::optional<std::uint64_t> K_opt) {
    const ChernoffStart cs = chernoff_start(dimension, lambda, alpha);
    const double c = dimension == 1 ? lambda : kPi * lambda;
    const double q = 0.5 * cs.delta * cs.delta; // exponent rate per unit level

    BoundReport rep;
    rep.dimension = dimension;
    rep.lambda = lambda;
    rep.alpha = alpha;
    rep.N = cs.N;
    rep.delta = cs.delta;
    rep.event = dimension == 1 ? "positive_direction" : "full_network";

    const double geom_denom = -std::expm1(-c * q); // 1 - e^{-cq} > 0
    if (K_opt) {
        rep.K = *K_opt;
        if (rep.K < cs.N)
            throw std::invalid_argument("broadcast_lower_bound: K must be >= N");
    } else {
        // Smallest K with tail_correction >= 0.99.
        const double k1 = -std::log(0.01 * geom_denom) / (c * q);
        rep.K = cs.N;
        if (k1 > 1.0) {
            const double kc = std::ceil(k1 - 1.0);
            if (kc >= 9.0e18)
                throw inapplicable_error(
                    "broadcast_lower_bound: default K out of range (delta too small)");
            rep.K = std::max<std::uint64_t>(cs.N, static_cast<std::uint64_t>(kc));
        }
    }

    long double head = 1.0L;
    for (std::uint64_t k = 1; k < cs.N; ++k)
        head *= static_cast<long double>(
            poisson_upper_tail(c * static_cast<double>(k), required_nodes(dimension, k, alpha)));
    rep.exact_head = static_cast<double>(head);

    long double log_body = 0.0L;
    for (std::uint64_t k = cs.N; k <= rep.K; ++k)
        log_body += log1pl(-expl(static_cast<long double>(-c * q) * static_cast<long double>(k)));
    rep.chernoff_body = static_cast<double>(expl(log_body));

    const double tail_sum = std::exp(-c * q * static_cast<double>(rep.K + 1)) / geom_denom;
    rep.tail_correction = std::max(0.0, 1.0 - tail_sum);
    if (!K_opt && rep.tail_correction < 0.99)
        throw invariant_error("broadcast_lower_bound: default K missed the tail target");

    rep.total = rep.exact_head * rep.chernoff_body * rep.tail_correction;
    for (const double f : {rep.exact_head, rep.chernoff_body, rep.tail_correction, rep.total})
        if (!(f >= 0.0 && f <= 1.0))
            throw invariant_error("broadcast_lower_bound: factor outside [0,1]");
    return rep;
}

void write_bound_report_json(std::ostream& os, const BoundReport& rep) {
    nlohmann::ordered_json j;
    j["dimension"] = rep.dimension;
    j["lambda"] = rep.lambda;
    j["alpha"] = rep.alpha;
    j["N"] = rep.N;
    j["delta"] = rep.delta;
    j["K"] = rep.K;
    j["exact_head"] = rep.exact_head;
    j["chernoff_body"] = rep.chernoff_body;
    j["tail_correction"] = rep.tail_correction;
    j["total"] = rep.total;
    j["event"] = rep.event;
    os << j.dump(2) << '\n';
    if (!os) throw io_error("write_bound_report_json: stream failure");
}

double tail_power_mean(int dimension, double lambda, double alpha, double d) {
    check_dimension(dimension);
    check_alpha(alpha);
    if (!(lambda >= 0.0)) throw std::invalid_argument("tail_power_mean: lambda must be >= 0");
    if (!(d > 0.0)) throw std::invalid_argument("tail_power_mean: d must be > 0");
    if (dimension == 1) {
        if (!(alpha > 1.0))
            throw inapplicable_error("tail_power_mean: 1-D mean finite only for alpha > 1");
        return lambda * std::pow(d, 1.0 - alpha) / (alpha - 1.0);
    }
    if (!(alpha > 2.0))
        throw inapplicable_error("tail_power_mean: 2-D mean finite only for alpha > 2");
    return 2.0 * kPi * lambda * std::pow(d, 2.0 - alpha) / (alpha - 2.0);
}

double tail_cutoff_distance(int dimension, double lambda, double alpha, double eps) {
    check_dimension(dimension);
    check_alpha(alpha);
    if (!(eps > 0.0)) throw std::invalid_argument("tail_cutoff_distance: eps must be > 0");
    if (!(lambda >= 0.0))
        throw std::invalid_argument("tail_cutoff_distance: lambda must be >= 0");
    if (lambda == 0.0) return 0.0;
    if (dimension == 1) {
        if (!(alpha > 1.0))
            throw inapplicable_error("tail_cutoff_distance: 1-D requires alpha > 1");
        return std::pow(2.0 * lambda / ((alpha - 1.0) * eps), 1.0 / (alpha - 1.0));
    }
    if (!(alpha > 2.0))
        throw inapplicable_error("tail_cutoff_distance: 2-D requires alpha > 2");
    return std::pow(4.0 * kPi * lambda / ((alpha - 2.0) * eps), 1.0 / (alpha - 2.0));
}

double gap_exists_prob(double lambda, double d, std::uint64_t N) {
    if (!(lambda >= 0.0) || !(d >= 0.0))
        throw std::invalid_argument("gap_exists_prob: lambda and d must be >= 0");
    if (N < 1) throw std::invalid_argument("gap_exists_prob: N must be >= 1");
    const double p_empty = std::exp(-lambda * d);
    if (p_empty >= 1.0) return 1.0;
    // 1 - (1 - p)^N, evaluated without cancellation.
    return -std::expm1(static_cast<double>(N) * std::log1p(-p_empty));
}

} // namespace coopcast
