#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "adtheta/theta.hpp"

namespace adtheta {

using Integrand = std::function<double(double)>;

/// Equidistant partition of [a, b] into n subintervals.
struct PartitionSpec {
    double a = 0.0;
    double b = 1.0;
    int n = 1;
    double h() const { return (b - a) / n; }
};

/// Raised when sampling the integrand produces a non-finite value.
struct EvalError : std::runtime_error {
    EvalError(int node_index, double t);
    int node = 0;
    double at = 0.0;
};

/// Result of one quadrature run: the value, the per-subinterval theta
/// decisions and the number of decisions that fell back to theta = 1/2.
///
/// Trailing subintervals handled by the reflected stencil store the
/// orientation-mapped decision (theta = 1 - theta', sigma = rho' - sigma',
/// rho = rho'), so theta == sigma/rho still holds for valid entries.
struct IntegralResult {
    double value = 0.0;
    std::vector<ThetaDecision> decisions;
    long invalid_count = 0;
};

/// Policy for the trailing subintervals n > N-q-1, where the forward stencil
/// would sample past b.
enum class TrailingPolicy {
    /// Apply the scheme to the reversed integrand g(s) = f(a+b-s); the
    /// trailing subinterval [t_n, t_{n+1}] then uses the backward samples
    /// f(t_n)..f(t_{n-q}) and theta_n = 1 - theta(reflected). Keeps the
    /// O(h^{q+2}) local error using only in-range samples.
    reflect,
    /// Plain theta = 1/2 on the trailing subintervals (counted as invalid).
    crank_nicolson,
};

/// q-th order adapted theta rule for the integral of f over the partition:
/// value = sum_n [theta_n f(t_n) + (1 - theta_n) f(t_{n+1})] h with theta_n
/// from adapted_theta_sampled on the forward samples f(t_{n+1})..f(t_{n+q+1})
/// while they fit, and the trailing policy afterwards. f is sampled once per
/// node. Requires n >= q+2.
IntegralResult integrate_adapted(const Integrand& f,
                                 const PartitionSpec& part,
                                 int q,
                                 const ThetaLimits& limits,
                                 TrailingPolicy trailing = TrailingPolicy::reflect);

/// Same endpoint-weighted rule with a constant theta (theta = 1/2 is the
/// trapezoid / Crank-Nicolson rule). Decisions are all marked valid with the
/// constant theta (sigma = theta, rho = 1 so theta == sigma/rho).
IntegralResult integrate_fixed_theta(const Integrand& f,
                                     const PartitionSpec& part,
                                     double theta);

/// The demo integrand t^3 exp(-(t - 1/2)^2).
double reference_integrand(double t);

/// Composite Simpson rule with `panels` panels (2*panels subintervals),
/// used to produce reference values for integrands without a closed form.
double composite_simpson(const Integrand& f, double a, double b, long panels);

}  // namespace adtheta
