#include "adtheta/gauss_hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace adtheta {
namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// Orthonormal Hermite functions w.r.t. exp(-x^2):
//   p_0 = pi^{-1/4},  p_{k+1} = x sqrt(2/(k+1)) p_k - sqrt(k/(k+1)) p_{k-1}.
// Returns (p_m(x), p_{m-1}(x)); the derivative is p_m'(x) = sqrt(2m) p_{m-1}(x).
std::pair<double, double> hermite_pair(int m, double x) {
    double prev = 0.0;
    double cur = 1.0 / std::pow(std::numbers::pi, 0.25);
    for (int k = 0; k < m; ++k) {
        const double next = x * std::sqrt(2.0 / (k + 1)) * cur -
                            std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return {cur, prev};
}

double bisect_root(int m, double lo, double hi) {
    double flo = hermite_pair(m, lo).first;
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = hermite_pair(m, mid).first;
        if ((flo < 0.0) == (fmid < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double newton_polish(int m, double x) {
    for (int it = 0; it < 50; ++it) {
        const auto [pm, pm1] = hermite_pair(m, x);
        const double deriv = std::sqrt(2.0 * m) * pm1;
        const double step = pm / deriv;
        x -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(x))) break;
    }
    return x;
}

}  // namespace

HermiteRule gauss_hermite(int m) {
    if (m < 1 || m > 64) {
        throw std::out_of_range("gauss_hermite supports 1 <= m <= 64, got " + std::to_string(m));
    }

    // Roots by degree induction: the roots of p_{d} strictly interlace those
    // of p_{d-1}, with the outermost bracketed by +-sqrt(2d+1).
    std::vector<double> roots{0.0};
    for (int d = 2; d <= m; ++d) {
        const double bound = std::sqrt(2.0 * d + 1.0);
        std::vector<double> brackets;
        brackets.reserve(d + 1);
        brackets.push_back(-bound);
        brackets.insert(brackets.end(), roots.begin(), roots.end());
        brackets.push_back(bound);
        std::vector<double> next(d);
        for (int i = 0; i < d; ++i) {
            next[i] = newton_polish(d, bisect_root(d, brackets[i], brackets[i + 1]));
        }
        roots = std::move(next);
    }

    // Symmetrize: compute the non-negative half, mirror nodes and weights.
    HermiteRule rule;
    rule.m = m;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    for (int i = m / 2; i < m; ++i) {
        const double x = (2 * i == m - 1) ? 0.0 : 0.5 * (roots[i] - roots[m - 1 - i]);
        const double pm1 = hermite_pair(m, x).second;
        const double w = 1.0 / (m * pm1 * pm1);
        rule.nodes[i] = x;
        rule.weights[i] = w;
        rule.nodes[m - 1 - i] = -x;
        rule.weights[m - 1 - i] = w;
    }
    return rule;
}

double conditional_expectation(const std::function<double(double)>& g,
                               double x,
                               double variance,
                               const HermiteRule& rule) {
    if (!(variance > 0.0) || !std::isfinite(variance)) {
        throw std::invalid_argument("variance must be strictly positive");
    }
    const double spread = std::sqrt(2.0 * variance);
    double acc = 0.0;
    for (int i = 0; i < rule.m; ++i) {
        const double value = g(x + spread * rule.nodes[i]);
        if (!std::isfinite(value)) {
            throw std::runtime_error("expectation integrand is not finite at x = " +
                                     std::to_string(x + spread * rule.nodes[i]));
        }
        acc += rule.weights[i] * value;
    }
    return acc / kSqrtPi;
}

}  // namespace adtheta
