#pragma once

#include <functional>
#include <vector>

namespace adtheta {

/// Gauss-Hermite rule for integrals against exp(-x^2): integrates
/// x^k exp(-x^2) exactly for k <= 2m-1. Nodes ascend and are symmetric about
/// zero; weights are positive and sum to sqrt(pi). Immutable once built.
struct HermiteRule {
    int m = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Builds the m-point rule (1 <= m <= 64). Nodes are the roots of the
/// degree-m physicists' Hermite polynomial, found by bisection within the
/// interlacing brackets of the degree m-1 roots and polished by Newton steps
/// on the orthonormal recurrence; weights are 1 / (m p_{m-1}(x_i)^2).
HermiteRule gauss_hermite(int m);

/// E[g(X)] for X ~ N(x, variance), evaluated as
/// (1/sqrt(pi)) sum_i w_i g(x + sqrt(2 variance) a_i).
/// variance must be strictly positive; a non-finite g value raises
/// std::runtime_error identifying the abscissa.
double conditional_expectation(const std::function<double(double)>& g,
                               double x,
                               double variance,
                               const HermiteRule& rule);

}  // namespace adtheta
