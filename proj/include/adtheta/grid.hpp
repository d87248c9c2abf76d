#pragma once

#include <vector>

namespace adtheta {

/// Uniform space grid symmetric about zero with 0 exactly a node. Nodes are
/// x_i = (i - half_count) * dx for i = 0 .. 2*half_count; the actual span
/// [min_x, max_x] covers the requested half width (ceil expansion).
struct SpaceGrid {
    double dx = 1.0;
    long half_count = 1;
    double requested_half_width = 1.0;

    long size() const { return 2 * half_count + 1; }
    double node(long i) const { return static_cast<double>(i - half_count) * dx; }
    double min_x() const { return node(0); }
    double max_x() const { return node(size() - 1); }
};

/// Builds the grid with node count 2*ceil(half_width/dx) + 1. Throws
/// std::invalid_argument on non-positive or degenerate sizes.
SpaceGrid make_grid(double half_width, double dx);

/// Values of a scalar function on the nodes of a grid. Immutable once a
/// time level is filled; interpolation queries are pure.
struct GridFunction {
    SpaceGrid grid;
    std::vector<double> values;
};

/// Degree-r local Lagrange interpolation through the r+1 grid nodes nearest
/// x (ties broken toward the left, stencil shifted inward at the
/// boundaries). Queries beyond the outermost nodes are clamped to the
/// nearest endpoint before interpolation, so out-of-domain results equal the
/// boundary value. A query exactly on a node returns the stored value
/// exactly.
double interpolate(const GridFunction& fn, double x, int r);

}  // namespace adtheta
