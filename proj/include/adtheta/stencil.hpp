#pragma once

#include <vector>

namespace adtheta {

/// Largest supported derivative-stencil order. Closed-form ratios are tabulated for
/// q <= 4; higher orders are allowed for experimentation.
inline constexpr int kMaxStencilOrder = 8;

/// Evaluation point for the Lagrange derivative coefficients: the stencil
/// interpolates through the q+1 forward offsets {1, ..., q+1} (in units of
/// the step h), and the scaled derivatives h^k L^(k) are taken either at
/// offset 0 (`base`) or offset 1 (`first_node`).
enum class DerivPoint { base, first_node };

/// Coefficient matrix t_kj of f(t_{n+j}) in h^k L_n^(k) at the requested
/// point: q rows (k = 1..q), q+1 columns (j = 1..q+1). Values are exact
/// rationals evaluated at full double precision (one integer division per
/// entry), never numerical differentiation.
///
/// Throws std::out_of_range unless 1 <= q <= kMaxStencilOrder.
std::vector<std::vector<double>> lagrange_derivative_weights(int q, DerivPoint point);

/// Derivative-approximation stencils for one order q together with the
/// reduced weights defining the sampled theta ratio:
///
///   r_j  = sum_k (-1)^{k+1} t_kj^2 / (k+1)!
///   s_j  = sum_k t_kj^1 / (k+1)!
///
/// `rs` holds r_j + s_j computed in integer arithmetic before the final
/// division, so that constant sample vectors cancel exactly.
///
/// Immutable after construction; safe to share across threads.
struct StencilWeights {
    int q = 0;
    std::vector<std::vector<double>> t1;  // derivatives at the base point
    std::vector<std::vector<double>> t2;  // derivatives at the first node
    std::vector<double> r;
    std::vector<double> s;
    std::vector<double> rs;
};

/// Returns the cached weights for order q (built once per process).
/// Throws std::out_of_range unless 1 <= q <= kMaxStencilOrder.
const StencilWeights& theta_weights(int q);

}  // namespace adtheta
