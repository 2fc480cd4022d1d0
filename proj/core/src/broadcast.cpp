#include "coopcast/broadcast.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "coopcast/errors.hpp"
#include "coopcast/numeric.hpp"

namespace coopcast {

namespace {

void check_inputs(const Realization& r, const ModelParams& params) {
    params.validate();
    if (r.points.empty()) throw std::invalid_argument("run_broadcast: empty realization");
    if (r.source_index >= r.points.size() ||
        !(r.points[r.source_index] == Vec2{0.0, 0.0}))
        throw std::invalid_argument("run_broadcast: realization has no source node at the origin");
}

void finish(const Realization& r, BroadcastOutcome& o) {
    o.reached_count = 0;
    o.max_extent = 0.0;
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        if (o.decode_round[i] == kNeverDecoded) continue;
        ++o.reached_count;
        o.max_extent = std::max(o.max_extent,
                                distance(r.points[i], Vec2{0.0, 0.0}, r.dimension));
    }
    o.full_coverage = o.reached_count == r.points.size();
    if (o.rounds > static_cast<std::int32_t>(r.points.size()) - 1)
        throw invariant_error("run_broadcast: round count exceeded node count - 1");
}

} // namespace

BroadcastOutcome run_broadcast(const Realization& r, const ModelParams& params) {
    check_inputs(r, params);
    const std::size_t n = r.points.size();
    const detail::GainFromSquared gain(params.alpha);
    const double need = params.tau / params.p_t; // threshold on the gain sum

    BroadcastOutcome o;
    o.decode_round.assign(n, kNeverDecoded);
    o.decode_round[r.source_index] = 0;

    std::vector<KahanSum> acc(n);
    std::vector<char> saturated(n, 0);
    // Undecoded node indices, kept in ascending (canonical) order.
    std::vector<std::uint32_t> pending;
    pending.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        if (i != r.source_index) pending.push_back(static_cast<std::uint32_t>(i));

    std::vector<std::uint32_t> frontier{static_cast<std::uint32_t>(r.source_index)};
    std::vector<std::uint32_t> next_pending;
    next_pending.reserve(pending.size());

    std::int32_t round = 0;
    while (!frontier.empty() && !pending.empty()) {
        ++round;
        next_pending.clear();
        std::vector<std::uint32_t> newly;
        for (const std::uint32_t k : pending) {
            for (const std::uint32_t j : frontier) {
                const double d2 = squared_distance(r.points[j], r.points[k], r.dimension);
                if (d2 == 0.0)
                    saturated[k] = 1;
                else
                    acc[k].add(gain(d2));
            }
            if (saturated[k] || acc[k].value() >= need) {
                o.decode_round[k] = round;
                newly.push_back(k);
            } else {
                next_pending.push_back(k);
            }
        }
        if (newly.empty()) {
            --round; // unproductive probe round is not counted
            break;
        }
        pending.swap(next_pending);
        frontier = std::move(newly);
    }
    o.rounds = round;

    o.final_power.resize(n);
    for (std::size_t i = 0; i < n; ++i) o.final_power[i] = acc[i].value();
    finish(r, o);
    return o;
}

BroadcastOutcome run_broadcast_oracle(const Realization& r, const ModelParams& params) {
    check_inputs(r, params);
    const std::size_t n = r.points.size();
    const detail::GainFromSquared gain(params.alpha);
    const double need = params.tau / params.p_t;

    BroadcastOutcome o;
    o.decode_round.assign(n, kNeverDecoded);
    o.decode_round[r.source_index] = 0;
    o.final_power.assign(n, 0.0);

    std::int32_t round = 0;
    for (;;) {
        ++round;
        std::vector<std::size_t> newly;
        for (std::size_t k = 0; k < n; ++k) {
            if (o.decode_round[k] != kNeverDecoded) continue;
            KahanSum acc;
            bool sat = false;
            for (std::size_t j = 0; j < n; ++j) { // canonical order over decoded
                if (o.decode_round[j] == kNeverDecoded || j == k) continue;
                const double d2 = squared_distance(r.points[j], r.points[k], r.dimension);
                if (d2 == 0.0)
                    sat = true;
                else
                    acc.add(gain(d2));
            }
            o.final_power[k] = acc.value();
            if (sat || acc.value() >= need) newly.push_back(k);
        }
        if (newly.empty()) {
            --round;
            break;
        }
        for (const std::size_t k : newly) o.decode_round[k] = round;
    }
    o.rounds = round;
    finish(r, o);
    return o;
}

double positive_extent(const Realization& r, const BroadcastOutcome& o) {
    if (r.dimension != 1)
        throw std::invalid_argument("positive_extent: defined for 1-D outcomes only");
    double ext = 0.0;
    for (std::size_t i = 0; i < r.points.size(); ++i)
        if (o.decode_round[i] != kNeverDecoded) ext = std::max(ext, r.points[i].x);
    return ext;
}

void write_outcome_csv(std::ostream& os, const Realization& r, const BroadcastOutcome& o) {
    os << (r.dimension == 1 ? "node_index,x,decode_round\n" : "node_index,x,y,decode_round\n");
    char buf[160];
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        if (r.dimension == 1)
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%d\n", i, r.points[i].x,
                          o.decode_round[i]);
        else
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%d\n", i, r.points[i].x,
                          r.points[i].y, o.decode_round[i]);
        os << buf;
    }
    if (!os) throw io_error("write_outcome_csv: stream failure");
}

} // namespace coopcast
