#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "adtheta/gauss_hermite.hpp"
#include "adtheta/grid.hpp"
#include "adtheta/theta.hpp"

namespace adtheta {

/// Known closed-form solution (y(t, x), z(t, x)) for error measurement and
/// the exact-solution bootstrap mode.
struct ExactSolution {
    std::function<double(double, double)> y;
    std::function<double(double, double)> z;
};

/// Terminal-value problem: y_t = phi(W_T) + int_t^T f(s, y_s) ds - int z dW,
/// with generator f = f(t, y) independent of z. phi_x supplies the terminal
/// condition of the z component (z_T = phi'(W_T)).
struct BsdeProblem {
    std::function<double(double, double)> f;    // f(t, y)
    std::function<double(double, double)> f_y;  // d f / d y
    std::function<double(double)> phi;
    std::function<double(double)> phi_x;
    double horizon = 1.0;
    std::optional<ExactSolution> exact;
};

enum class SchemeKind { fixed_theta, adapted };

enum class BootstrapMode {
    refined_cn,     // theta = 1/2 on a refined sub-partition per coarse step
    exact_solution, // fill the last q levels from problem.exact (diagnostic)
};

/// Solver configuration. The space step and domain half width follow the
/// balance rules below unless overridden:
///   dx = h^((q_eff + 2)/(r + 1))      with q_eff = q (adapted) or 1 (fixed)
///   L  = 8 sqrt(T) + sqrt(2 (depth) h) * max Hermite node
/// so the space error stays subdominant and the deepest quadrature stencil
/// launched near x = 0 stays far from the clamped boundary.
struct SchemeConfig {
    SchemeKind kind = SchemeKind::fixed_theta;
    double theta = 0.5;              // fixed_theta only
    int q = 2;                       // adapted only, 2..4
    ThetaLimits limits{10.0, 1e30};
    int gh_points = 8;
    int interp_order = 5;
    double fixpoint_tol = 1e-13;
    int fixpoint_max_iters = 100;
    BootstrapMode bootstrap = BootstrapMode::refined_cn;
    int bootstrap_substeps = 0;      // 0 -> N substeps per coarse step
    double domain_half_width = 0.0;  // 0 -> balance rule
    double space_step_override = 0.0;  // 0 -> balance rule

    static SchemeConfig fixed(double theta) {
        SchemeConfig c;
        c.kind = SchemeKind::fixed_theta;
        c.theta = theta;
        return c;
    }
    static SchemeConfig adapted(int q) {
        SchemeConfig c;
        c.kind = SchemeKind::adapted;
        c.q = q;
        return c;
    }
};

/// (y, z) grid functions at one time level.
struct SolutionField {
    int level = 0;
    GridFunction y;
    GridFunction z;
};

/// Raised on fixed-point non-convergence or a nearly singular z-equation,
/// carrying the time level and space point.
struct SolverError : std::runtime_error {
    SolverError(const std::string& what, int level, double x);
    int level = 0;
    double x = 0.0;
};

struct SolveOutput {
    std::vector<SolutionField> fields;  // levels 0..N
    double y0 = 0.0;                    // y at (t, x) = (0, 0)
    double z0 = 0.0;
    long invalid_y = 0;  // (n, x) sites where the theta_y validity test failed
    long invalid_z = 0;
};

/// E[fn(X)] for X ~ N(x, variance) with fn evaluated by degree-r local
/// interpolation of the grid function.
double field_expectation(const GridFunction& fn,
                         double x,
                         double variance,
                         const HermiteRule& rule,
                         int r);

/// Level N: y = phi, z = phi_x at every node. Rejects non-finite values.
SolutionField terminal_level(const BsdeProblem& problem, const SpaceGrid& grid);

/// Fields for levels N-q .. N-1 (ascending), produced by the configured
/// bootstrap mode. Requires N > q; exact_solution mode requires problem.exact.
std::vector<SolutionField> bootstrap_levels(const BsdeProblem& problem,
                                            const SpaceGrid& grid,
                                            int N,
                                            int q,
                                            const SchemeConfig& config);

/// Adapted theta pair (theta_y, theta_z) at the site (n, x). `future` holds
/// levels n+1 .. n+q+1 ascending; h is the coarse time step. For j = 1..q+1
/// the sampled ratios use
///   e_y(j) = E[f(t_{n+j}, y^{n+j})],   e_z(j) = E[f_y(t_{n+j}, y^{n+j}) z^{n+j}]
/// with variance j h, each field interpolated at the quadrature abscissas.
std::pair<ThetaDecision, ThetaDecision> adapted_thetas_at(int n,
                                                          double x,
                                                          double h,
                                                          std::span<const SolutionField> future,
                                                          const BsdeProblem& problem,
                                                          const StencilWeights& weights,
                                                          const SchemeConfig& config,
                                                          const HermiteRule& rule);

struct BackwardStepResult {
    SolutionField field;
    long invalid_y = 0;
    long invalid_z = 0;
};

/// One backward step to level n. For every node x it forms
///   E1 = E[y^{n+1}], E2 = E[f(t_{n+1}, y^{n+1})],
///   E3 = E[z^{n+1}], E4 = E[f_y(t_{n+1}, y^{n+1}) z^{n+1}]    (variance h),
/// picks (theta_y, theta_z) per the scheme kind, solves
///   y = E1 + h (theta_y f(t_n, y) + (1 - theta_y) E2)
/// by fixed-point iteration started at E1 + h E2, and closes the linear
/// z-equation: z = (E3 + h (1 - theta_z) E4) / (1 - h theta_z f_y(t_n, y)).
/// `future` holds levels n+1 .. n+q+1 for the adapted kind, just n+1 for
/// fixed. Throws SolverError on non-convergence or a singular z-equation.
BackwardStepResult backward_step(int n,
                                 double h,
                                 std::span<const SolutionField> future,
                                 const BsdeProblem& problem,
                                 const SchemeConfig& config,
                                 const HermiteRule& rule);

/// Full backward sweep: terminal level, bootstrap (adapted kind), then
/// backward steps to level 0. Returns all levels plus the point values at
/// (t, x) = (0, 0) and the invalid-site counts.
SolveOutput solve_bsde(const BsdeProblem& problem, int N, const SchemeConfig& config);

}  // namespace adtheta
