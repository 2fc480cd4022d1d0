#include "coopcast/propagation.hpp"

#include "coopcast/numeric.hpp"

namespace coopcast {

PowerSum received_power(std::span<const Vec2> sources, const Vec2& target,
                        const ModelParams& params, int dimension) {
    params.validate();
    if (dimension != 1 && dimension != 2)
        throw std::invalid_argument("received_power: dimension must be 1 or 2");

    const detail::GainFromSquared gain(params.alpha);
    PowerSum p;
    KahanSum acc;
    for (const Vec2& s : sources) {
        const double d2 = squared_distance(s, target, dimension);
        if (d2 == 0.0) {
            p.saturated = true;
            continue;
        }
        acc.add(gain(d2));
    }
    p.value = params.p_t * acc.value();
    return p;
}

} // namespace coopcast
