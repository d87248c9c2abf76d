#include "adtheta/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace adtheta {

SpaceGrid make_grid(double half_width, double dx) {
    if (!(half_width > 0.0) || !std::isfinite(half_width) ||
        !(dx > 0.0) || !std::isfinite(dx)) {
        throw std::invalid_argument("grid requires positive finite half_width and dx");
    }
    const double count = std::ceil(half_width / dx);
    if (count > 5e7) {
        throw std::invalid_argument("grid would need more than 1e8 nodes (dx too small)");
    }
    SpaceGrid g;
    g.dx = dx;
    g.half_count = std::max<long>(1, static_cast<long>(count));
    g.requested_half_width = half_width;
    return g;
}

double interpolate(const GridFunction& fn, double x, int r) {
    const SpaceGrid& g = fn.grid;
    const long size = g.size();
    if (r < 1) throw std::invalid_argument("interpolation order r must be >= 1");
    if (fn.values.size() != static_cast<std::size_t>(size)) {
        throw std::invalid_argument("grid function has " + std::to_string(fn.values.size()) +
                                    " values for " + std::to_string(size) + " nodes");
    }
    if (size < r + 1) {
        throw std::invalid_argument("grid too small for interpolation order " + std::to_string(r));
    }
    if (std::isnan(x)) throw std::invalid_argument("interpolation query is NaN");

    x = std::clamp(x, g.min_x(), g.max_x());

    // Start of the r+1-node window nearest x; round-half-down breaks ties
    // toward the left.
    const double u = (x - g.min_x()) / g.dx;
    long start = static_cast<long>(std::ceil(u - 0.5 * r - 0.5));
    start = std::clamp<long>(start, 0, size - 1 - r);

    double acc = 0.0;
    for (long j = start; j <= start + r; ++j) {
        const double xj = g.node(j);
        double basis = 1.0;
        for (long i = start; i <= start + r; ++i) {
            if (i == j) continue;
            basis *= (x - g.node(i)) / (xj - g.node(i));
        }
        acc += basis * fn.values[j];
    }
    return acc;
}

}  // namespace adtheta
