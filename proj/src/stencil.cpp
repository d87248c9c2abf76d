#include "adtheta/stencil.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace adtheta {
namespace {

using i64 = std::int64_t;

constexpr std::array<i64, 11> kFactorial = {
    1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800};

void check_order(int q) {
    if (q < 1 || q > kMaxStencilOrder) {
        throw std::out_of_range("stencil order q must be in [1, " +
                                std::to_string(kMaxStencilOrder) + "], got " +
                                std::to_string(q));
    }
}

// Integer coefficients (ascending powers) of prod_{i in 1..q+1, i != skip} (u - i).
std::vector<i64> node_poly(int q, int skip) {
    std::vector<i64> c{1};
    for (int i = 1; i <= q + 1; ++i) {
        if (i == skip) continue;
        std::vector<i64> next(c.size() + 1, 0);
        for (std::size_t m = 0; m < c.size(); ++m) {
            next[m + 1] += c[m];
            next[m] -= i64{i} * c[m];
        }
        c = std::move(next);
    }
    return c;
}

// k-th derivative of an integer polynomial at u0 in {0, 1}; exact in int64
// for the coefficient magnitudes reachable with q <= 8.
i64 poly_deriv_at(const std::vector<i64>& c, int k, int u0) {
    i64 acc = 0;
    for (std::size_t m = static_cast<std::size_t>(k); m < c.size(); ++m) {
        i64 falling = 1;
        for (int t = 0; t < k; ++t) falling *= static_cast<i64>(m - t);
        if (u0 == 0) {
            if (m == static_cast<std::size_t>(k)) acc += c[m] * falling;
        } else {
            acc += c[m] * falling;
        }
    }
    return acc;
}

// prod_{i != j} (j - i) over i in 1..q+1, the denominator of the j-th basis
// polynomial.
i64 basis_denominator(int q, int j) {
    i64 d = 1;
    for (int i = 1; i <= q + 1; ++i) {
        if (i != j) d *= i64{j - i};
    }
    return d;
}

StencilWeights build_weights(int q) {
    StencilWeights w;
    w.q = q;
    w.t1.assign(q, std::vector<double>(q + 1));
    w.t2.assign(q, std::vector<double>(q + 1));
    w.r.resize(q + 1);
    w.s.resize(q + 1);
    w.rs.resize(q + 1);

    for (int j = 1; j <= q + 1; ++j) {
        const std::vector<i64> poly = node_poly(q, j);
        const i64 dj = basis_denominator(q, j);
        i64 num_r = 0;
        i64 num_s = 0;
        for (int k = 1; k <= q; ++k) {
            const i64 n1 = poly_deriv_at(poly, k, 0);
            const i64 n2 = poly_deriv_at(poly, k, 1);
            w.t1[k - 1][j - 1] = static_cast<double>(n1) / static_cast<double>(dj);
            w.t2[k - 1][j - 1] = static_cast<double>(n2) / static_cast<double>(dj);
            const i64 scale = kFactorial[q + 1] / kFactorial[k + 1];
            num_r += (k % 2 == 1 ? n2 : -n2) * scale;
            num_s += n1 * scale;
        }
        const double denom = static_cast<double>(dj) * static_cast<double>(kFactorial[q + 1]);
        w.r[j - 1] = static_cast<double>(num_r) / denom;
        w.s[j - 1] = static_cast<double>(num_s) / denom;
        w.rs[j - 1] = static_cast<double>(num_r + num_s) / denom;
    }
    return w;
}

}  // namespace

std::vector<std::vector<double>> lagrange_derivative_weights(int q, DerivPoint point) {
    check_order(q);
    const StencilWeights& w = theta_weights(q);
    return point == DerivPoint::base ? w.t1 : w.t2;
}

const StencilWeights& theta_weights(int q) {
    check_order(q);
    static const std::array<StencilWeights, kMaxStencilOrder> table = [] {
        std::array<StencilWeights, kMaxStencilOrder> t;
        for (int i = 1; i <= kMaxStencilOrder; ++i) t[i - 1] = build_weights(i);
        return t;
    }();
    return table[q - 1];
}

}  // namespace adtheta
