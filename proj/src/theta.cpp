#include "adtheta/theta.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace adtheta {
namespace {

void check_limits(const ThetaLimits& limits) {
    if (!(limits.l_theta > 0.0) || !std::isfinite(limits.l_theta) ||
        !(limits.l_rho > 0.0) || !std::isfinite(limits.l_rho)) {
        throw std::invalid_argument("theta limits must be positive and finite");
    }
}

void check_finite(std::span<const double> v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument(std::string(what) + " contains a non-finite value");
        }
    }
}

ThetaDecision decide(double sigma, double rho, const ThetaLimits& limits) {
    ThetaDecision d;
    d.sigma = sigma;
    d.rho = rho;
    d.theta = 0.5;
    d.valid = false;
    if (rho != 0.0 && std::abs(rho) * limits.l_rho >= 1.0) {
        const double theta = sigma / rho;
        if (std::abs(theta) <= limits.l_theta) {
            d.theta = theta;
            d.valid = true;
        }
    }
    return d;
}

}  // namespace

ThetaDecision adapted_theta_sampled(std::span<const double> samples,
                                    const StencilWeights& weights,
                                    const ThetaLimits& limits) {
    check_limits(limits);
    if (samples.size() != static_cast<std::size_t>(weights.q) + 1) {
        throw std::invalid_argument("expected " + std::to_string(weights.q + 1) +
                                    " samples, got " + std::to_string(samples.size()));
    }
    check_finite(samples, "samples");

    const double base = samples[0];
    double sigma = 0.0;
    double rho = 0.0;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        const double g = samples[j] - base;
        sigma += weights.r[j] * g;
        rho += weights.rs[j] * g;
    }
    return decide(sigma, rho, limits);
}

ThetaDecision adapted_theta_exact(std::span<const double> d_left,
                                  std::span<const double> d_right,
                                  double h,
                                  const ThetaLimits& limits) {
    check_limits(limits);
    if (d_left.empty() || d_left.size() != d_right.size()) {
        throw std::invalid_argument("derivative sequences must be non-empty and equally sized");
    }
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("step size h must be positive and finite");
    }
    check_finite(d_left, "d_left");
    check_finite(d_right, "d_right");

    double sigma = 0.0;
    double rho = 0.0;
    double coeff = h;  // becomes h^{k+1}/(k+1)! as k advances
    for (std::size_t k = 1; k <= d_left.size(); ++k) {
        coeff *= h / static_cast<double>(k + 1);
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        sigma += sign * d_right[k - 1] * coeff;
        rho += (d_left[k - 1] + sign * d_right[k - 1]) * coeff;
    }
    return decide(sigma, rho, limits);
}

}  // namespace adtheta
