#include "adtheta/quad1d.hpp"

#include <cmath>
#include <string>

namespace adtheta {
namespace {

void check_partition(const PartitionSpec& part, int min_n) {
    if (!std::isfinite(part.a) || !std::isfinite(part.b) || !(part.a < part.b)) {
        throw std::invalid_argument("partition requires finite a < b");
    }
    if (part.n < min_n) {
        throw std::invalid_argument("partition needs at least " + std::to_string(min_n) +
                                    " subintervals, got " + std::to_string(part.n));
    }
}

std::vector<double> sample_nodes(const Integrand& f, const PartitionSpec& part) {
    const double h = part.h();
    std::vector<double> fs(part.n + 1);
    for (int i = 0; i <= part.n; ++i) {
        const double t = part.a + i * h;
        fs[i] = f(t);
        if (!std::isfinite(fs[i])) throw EvalError(i, t);
    }
    return fs;
}

}  // namespace

EvalError::EvalError(int node_index, double t)
    : std::runtime_error("integrand is not finite at node " + std::to_string(node_index) +
                         " (t = " + std::to_string(t) + ")"),
      node(node_index),
      at(t) {}

IntegralResult integrate_adapted(const Integrand& f,
                                 const PartitionSpec& part,
                                 int q,
                                 const ThetaLimits& limits,
                                 TrailingPolicy trailing) {
    const StencilWeights& w = theta_weights(q);
    check_partition(part, q + 2);

    const int N = part.n;
    const double h = part.h();
    const std::vector<double> fs = sample_nodes(f, part);

    IntegralResult out;
    out.decisions.reserve(N);
    std::vector<double> buf(q + 1);

    double acc = 0.0;
    for (int n = 0; n < N; ++n) {
        ThetaDecision d;
        if (n <= N - q - 1) {
            for (int j = 0; j <= q; ++j) buf[j] = fs[n + 1 + j];
            d = adapted_theta_sampled(buf, w, limits);
        } else if (trailing == TrailingPolicy::reflect && n >= q) {
            for (int j = 0; j <= q; ++j) buf[j] = fs[n - j];
            const ThetaDecision refl = adapted_theta_sampled(buf, w, limits);
            d.valid = refl.valid;
            d.theta = refl.valid ? 1.0 - refl.theta : 0.5;
            d.rho = refl.rho;
            d.sigma = refl.rho - refl.sigma;
        } else {
            d = ThetaDecision{0.5, false, 0.0, 0.0};
        }
        acc += (d.theta * fs[n] + (1.0 - d.theta) * fs[n + 1]) * h;
        if (!d.valid) ++out.invalid_count;
        out.decisions.push_back(d);
    }
    out.value = acc;
    return out;
}

IntegralResult integrate_fixed_theta(const Integrand& f,
                                     const PartitionSpec& part,
                                     double theta) {
    check_partition(part, 1);
    if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");

    const int N = part.n;
    const double h = part.h();
    const std::vector<double> fs = sample_nodes(f, part);

    IntegralResult out;
    out.decisions.assign(N, ThetaDecision{theta, true, 1.0, theta});
    double acc = 0.0;
    for (int n = 0; n < N; ++n) {
        acc += (theta * fs[n] + (1.0 - theta) * fs[n + 1]) * h;
    }
    out.value = acc;
    return out;
}

double reference_integrand(double t) {
    const double u = t - 0.5;
    return t * t * t * std::exp(-u * u);
}

double composite_simpson(const Integrand& f, double a, double b, long panels) {
    if (panels < 1) throw std::invalid_argument("composite_simpson needs at least one panel");
    const long n = 2 * panels;
    const double h = (b - a) / static_cast<double>(n);
    double odd = 0.0;
    double even = 0.0;
    for (long i = 1; i < n; i += 2) odd += f(a + i * h);
    for (long i = 2; i < n; i += 2) even += f(a + i * h);
    return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

}  // namespace adtheta
