// e2pi -- Richardson extrapolation on a ratio-2 geometric index grid,
// eliminating successive terms of an error series c1/n^q + c2/n^{q+1} + ...

#ifndef E2PI_RICHARDSON_HPP
#define E2PI_RICHARDSON_HPP

#include <utility>
#include <vector>

#include "e2pi/hpreal.hpp"

namespace e2pi {

inline HPReal richardson(const std::vector<std::pair<unsigned long, HPReal>>& samples,
                         unsigned levels, unsigned assumed_order) {
    if (levels < 1 || assumed_order < 1)
        throw UsageError("richardson: levels and assumed_order must be >= 1");
    if (samples.size() < levels + 1)
        throw UsageError("richardson: need at least levels + 1 samples");
    for (std::size_t i = 0; i + 1 < samples.size(); ++i)
        if (samples[i + 1].first != 2 * samples[i].first)
            throw UsageError("richardson: samples must sit on a ratio-2 geometric grid");

    PrecisionSpec p = samples.front().second.prec();
    PrecisionSpec w(p.bits + 32);
    std::vector<HPReal> row;
    row.reserve(samples.size());
    for (const auto& s : samples)
        row.push_back(s.second.round_to(w));

    // level k eliminates the n^-(q + k - 1) term; weight r = 2^(q + k - 1)
    for (unsigned k = 1; k <= levels; ++k) {
        long e = static_cast<long>(assumed_order) + static_cast<long>(k) - 1;
        HPReal r = HPReal::from_long(1, w).ldexp(e);
        HPReal r_minus_1 = hp_sub(r, HPReal::from_long(1, w), w);
        std::vector<HPReal> next;
        next.reserve(row.size() - 1);
        for (std::size_t i = 0; i + 1 < row.size(); ++i) {
            HPReal t = hp_sub(hp_mul(r, row[i + 1], w), row[i], w);
            next.push_back(hp_div(t, r_minus_1, w));
        }
        row = std::move(next);
    }
    return row.back().round_to(p);
}

}  // namespace e2pi

#endif  // E2PI_RICHARDSON_HPP
