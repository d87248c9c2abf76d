#pragma once

#include <span>

#include "adtheta/stencil.hpp"

namespace adtheta {

/// Validity bounds for the adapted theta ratio: the ratio is accepted only
/// when |theta| <= l_theta and |rho|^{-1} <= l_rho. Both must be positive
/// and finite.
struct ThetaLimits {
    double l_theta = 1.0;
    double l_rho = 1e8;
};

/// Outcome of one adapted-theta evaluation. `sigma` and `rho` are the raw
/// numerator and denominator regardless of validity; when the decision is
/// invalid theta falls back to 1/2 (Crank-Nicolson).
struct ThetaDecision {
    double theta = 0.5;
    bool valid = false;
    double rho = 0.0;
    double sigma = 0.0;
};

/// Sampled form: given the q+1 forward samples f(t_{n+1})..f(t_{n+q+1}),
/// computes sigma = sum_j r_j f_j and rho = sum_j (r_j + s_j) f_j and accepts
/// theta = sigma/rho when rho != 0, |rho|^{-1} <= l_rho and |theta| <= l_theta.
/// rho == 0 is an ordinary input producing the fallback, not an error.
///
/// Sums are taken over f_j - f_1, which leaves sigma and rho mathematically
/// unchanged (both weight rows sum to zero) and makes constant sample
/// vectors cancel exactly.
ThetaDecision adapted_theta_sampled(std::span<const double> samples,
                                    const StencilWeights& weights,
                                    const ThetaLimits& limits);

/// Exact-derivative form: d_left holds f'(t_n)..f^(q)(t_n), d_right holds
/// f'(t_{n+1})..f^(q)(t_{n+1});
///
///   sigma = sum_k (-1)^{k+1} d_right[k] h^{k+1}/(k+1)!
///   rho   = sum_k (d_left[k] + (-1)^{k+1} d_right[k]) h^{k+1}/(k+1)!
///
/// The |rho|^{-1} <= l_rho guard is applied here as well for a uniform code
/// path. Throws std::invalid_argument on length mismatch, non-finite input,
/// h <= 0 or degenerate limits.
ThetaDecision adapted_theta_exact(std::span<const double> d_left,
                                  std::span<const double> d_right,
                                  double h,
                                  const ThetaLimits& limits);

}  // namespace adtheta
