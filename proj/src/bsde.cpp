#include "adtheta/bsde.hpp"

#include <cmath>

namespace adtheta {
namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

struct StepContext {
    const BsdeProblem* problem;
    const HermiteRule* rule;
    int r;
    double fix_tol;
    int fix_iters;
};

// Per-node expectations shared by the theta ratios and the step update:
// e1 = E[y^{next}], e3 = E[z^{next}] (variance dt), and for j = 1..depth
// e_y[j-1] = E[f(t_j, y)], e_z[j-1] = E[f_y(t_j, y) z] with variance j dt.
struct NodeExpectations {
    double e1 = 0.0;
    double e3 = 0.0;
    std::vector<double> e_y;
    std::vector<double> e_z;
};

NodeExpectations node_expectations(double x,
                                   double t_base,
                                   double dt,
                                   int depth,
                                   std::span<const SolutionField> future,
                                   const StepContext& ctx) {
    NodeExpectations out;
    out.e_y.resize(depth);
    out.e_z.resize(depth);
    const HermiteRule& rule = *ctx.rule;
    for (int j = 1; j <= depth; ++j) {
        const SolutionField& level = future[j - 1];
        const double t_j = t_base + j * dt;
        const double spread = std::sqrt(2.0 * j * dt);
        double acc_y = 0.0, acc_z = 0.0, acc1 = 0.0, acc3 = 0.0;
        for (int i = 0; i < rule.m; ++i) {
            const double xi = x + spread * rule.nodes[i];
            const double yv = interpolate(level.y, xi, ctx.r);
            const double zv = interpolate(level.z, xi, ctx.r);
            acc_y += rule.weights[i] * ctx.problem->f(t_j, yv);
            acc_z += rule.weights[i] * ctx.problem->f_y(t_j, yv) * zv;
            if (j == 1) {
                acc1 += rule.weights[i] * yv;
                acc3 += rule.weights[i] * zv;
            }
        }
        out.e_y[j - 1] = acc_y / kSqrtPi;
        out.e_z[j - 1] = acc_z / kSqrtPi;
        if (j == 1) {
            out.e1 = acc1 / kSqrtPi;
            out.e3 = acc3 / kSqrtPi;
        }
    }
    return out;
}

// Implicit y-solve and closed-form z at one node.
std::pair<double, double> update_node(const StepContext& ctx,
                                      int level_tag,
                                      double x,
                                      double t_lo,
                                      double dt,
                                      double theta_y,
                                      double theta_z,
                                      const NodeExpectations& e) {
    const BsdeProblem& p = *ctx.problem;
    const double e2 = e.e_y[0];
    const double e4 = e.e_z[0];

    double y = e.e1 + dt * e2;
    bool converged = false;
    for (int it = 0; it < ctx.fix_iters; ++it) {
        const double next = e.e1 + dt * (theta_y * p.f(t_lo, y) + (1.0 - theta_y) * e2);
        if (!std::isfinite(next)) {
            throw SolverError("implicit y-iteration produced a non-finite value", level_tag, x);
        }
        const double diff = std::abs(next - y);
        y = next;
        if (diff <= ctx.fix_tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw SolverError("implicit y-iteration did not converge", level_tag, x);
    }

    const double fy = p.f_y(t_lo, y);
    const double denom = 1.0 - dt * theta_z * fy;
    if (std::abs(denom) < 1e-12) {
        throw SolverError("z-equation nearly singular (step size too large)", level_tag, x);
    }
    const double z = (e.e3 + dt * (1.0 - theta_z) * e4) / denom;
    if (!std::isfinite(z)) {
        throw SolverError("z-update produced a non-finite value", level_tag, x);
    }
    return {y, z};
}

// One level of the scheme over all grid nodes. fixed_theta empty -> adapted
// thetas from the sampled ratios over `depth` future levels.
BackwardStepResult step_level(int level_tag,
                              double t_lo,
                              double dt,
                              int depth,
                              std::span<const SolutionField> future,
                              std::optional<double> fixed_theta,
                              const ThetaLimits& limits,
                              const StepContext& ctx) {
    const SpaceGrid& grid = future[0].y.grid;
    const long size = grid.size();
    BackwardStepResult out;
    out.field.level = level_tag;
    out.field.y = GridFunction{grid, std::vector<double>(size)};
    out.field.z = GridFunction{grid, std::vector<double>(size)};

    const StencilWeights* weights = fixed_theta ? nullptr : &theta_weights(depth - 1);
    for (long i = 0; i < size; ++i) {
        const double x = grid.node(i);
        const NodeExpectations e = node_expectations(x, t_lo, dt, depth, future, ctx);
        double theta_y, theta_z;
        if (fixed_theta) {
            theta_y = theta_z = *fixed_theta;
        } else {
            const ThetaDecision dy = adapted_theta_sampled(e.e_y, *weights, limits);
            const ThetaDecision dz = adapted_theta_sampled(e.e_z, *weights, limits);
            theta_y = dy.theta;
            theta_z = dz.theta;
            if (!dy.valid) ++out.invalid_y;
            if (!dz.valid) ++out.invalid_z;
        }
        const auto [yv, zv] = update_node(ctx, level_tag, x, t_lo, dt, theta_y, theta_z, e);
        out.field.y.values[i] = yv;
        out.field.z.values[i] = zv;
    }
    return out;
}

StepContext make_context(const BsdeProblem& problem,
                         const SchemeConfig& config,
                         const HermiteRule& rule) {
    return StepContext{&problem, &rule, config.interp_order,
                       config.fixpoint_tol, config.fixpoint_max_iters};
}

void check_config(const SchemeConfig& config) {
    if (config.kind == SchemeKind::adapted && (config.q < 2 || config.q > 4)) {
        throw std::invalid_argument("adapted scheme supports q in 2..4 (q = 1 is Crank-Nicolson)");
    }
    if (config.gh_points < 2 || config.gh_points > 64) {
        throw std::invalid_argument("gh_points must be in 2..64");
    }
    if (config.interp_order < 1) {
        throw std::invalid_argument("interp_order must be >= 1");
    }
    if (!(config.fixpoint_tol > 0.0) || config.fixpoint_max_iters < 1) {
        throw std::invalid_argument("fixed-point tolerance/iteration budget must be positive");
    }
    if (config.kind == SchemeKind::fixed_theta && !std::isfinite(config.theta)) {
        throw std::invalid_argument("fixed theta must be finite");
    }
}

}  // namespace

SolverError::SolverError(const std::string& what, int level_in, double x_in)
    : std::runtime_error(what + " at level " + std::to_string(level_in) +
                         ", x = " + std::to_string(x_in)),
      level(level_in),
      x(x_in) {}

double field_expectation(const GridFunction& fn,
                         double x,
                         double variance,
                         const HermiteRule& rule,
                         int r) {
    return conditional_expectation([&](double u) { return interpolate(fn, u, r); },
                                   x, variance, rule);
}

SolutionField terminal_level(const BsdeProblem& problem, const SpaceGrid& grid) {
    SolutionField field;
    field.y = GridFunction{grid, std::vector<double>(grid.size())};
    field.z = GridFunction{grid, std::vector<double>(grid.size())};
    for (long i = 0; i < grid.size(); ++i) {
        const double x = grid.node(i);
        field.y.values[i] = problem.phi(x);
        field.z.values[i] = problem.phi_x(x);
        if (!std::isfinite(field.y.values[i]) || !std::isfinite(field.z.values[i])) {
            throw std::invalid_argument("terminal condition is not finite at x = " +
                                        std::to_string(x));
        }
    }
    return field;
}

std::vector<SolutionField> bootstrap_levels(const BsdeProblem& problem,
                                            const SpaceGrid& grid,
                                            int N,
                                            int q,
                                            const SchemeConfig& config) {
    if (N <= q) throw std::invalid_argument("bootstrap requires N > q");
    const double h = problem.horizon / N;

    std::vector<SolutionField> levels(q);
    if (config.bootstrap == BootstrapMode::exact_solution) {
        if (!problem.exact) {
            throw std::invalid_argument("exact_solution bootstrap requires problem.exact");
        }
        for (int j = 0; j < q; ++j) {
            const int level = N - q + j;
            const double t = level * h;
            SolutionField field;
            field.level = level;
            field.y = GridFunction{grid, std::vector<double>(grid.size())};
            field.z = GridFunction{grid, std::vector<double>(grid.size())};
            for (long i = 0; i < grid.size(); ++i) {
                field.y.values[i] = problem.exact->y(t, grid.node(i));
                field.z.values[i] = problem.exact->z(t, grid.node(i));
            }
            levels[j] = std::move(field);
        }
        return levels;
    }

    const int substeps = config.bootstrap_substeps > 0 ? config.bootstrap_substeps : N;
    const HermiteRule rule = gauss_hermite(config.gh_points);
    const StepContext ctx = make_context(problem, config, rule);
    const double dt = h / substeps;

    SolutionField current = terminal_level(problem, grid);
    current.level = N;
    for (int level = N - 1; level >= N - q; --level) {
        const double t_hi = (level + 1) * h;
        for (int k = 1; k <= substeps; ++k) {
            const double t_lo = t_hi - k * dt;
            std::span<const SolutionField> future(&current, 1);
            current = step_level(level, t_lo, dt, 1, future, 0.5, config.limits, ctx).field;
        }
        current.level = level;
        levels[level - (N - q)] = current;
    }
    return levels;
}

std::pair<ThetaDecision, ThetaDecision> adapted_thetas_at(int n,
                                                          double x,
                                                          double h,
                                                          std::span<const SolutionField> future,
                                                          const BsdeProblem& problem,
                                                          const StencilWeights& weights,
                                                          const SchemeConfig& config,
                                                          const HermiteRule& rule) {
    const int depth = weights.q + 1;
    if (future.size() < static_cast<std::size_t>(depth)) {
        throw std::invalid_argument("adapted thetas need q+1 future levels");
    }
    const StepContext ctx = make_context(problem, config, rule);
    const NodeExpectations e = node_expectations(x, n * h, h, depth, future, ctx);
    return {adapted_theta_sampled(e.e_y, weights, config.limits),
            adapted_theta_sampled(e.e_z, weights, config.limits)};
}

BackwardStepResult backward_step(int n,
                                 double h,
                                 std::span<const SolutionField> future,
                                 const BsdeProblem& problem,
                                 const SchemeConfig& config,
                                 const HermiteRule& rule) {
    check_config(config);
    const bool adapted = config.kind == SchemeKind::adapted;
    const int depth = adapted ? config.q + 1 : 1;
    if (future.size() < static_cast<std::size_t>(depth)) {
        throw std::invalid_argument("backward_step needs " + std::to_string(depth) +
                                    " future levels, got " + std::to_string(future.size()));
    }
    const StepContext ctx = make_context(problem, config, rule);
    std::optional<double> fixed;
    if (!adapted) fixed = config.theta;
    return step_level(n, n * h, h, depth, future.first(depth), fixed, config.limits, ctx);
}

SolveOutput solve_bsde(const BsdeProblem& problem, int N, const SchemeConfig& config) {
    check_config(config);
    const bool adapted = config.kind == SchemeKind::adapted;
    const int q = adapted ? config.q : 0;
    if (N <= q || N < 1) {
        throw std::invalid_argument("partition size N must exceed the stencil order q");
    }
    if (!(problem.horizon > 0.0) || !std::isfinite(problem.horizon)) {
        throw std::invalid_argument("problem horizon must be positive and finite");
    }

    const double h = problem.horizon / N;
    const int q_eff = adapted ? config.q : 1;
    const int depth = adapted ? config.q + 1 : 1;
    const HermiteRule rule = gauss_hermite(config.gh_points);

    const double dx = config.space_step_override > 0.0
                          ? config.space_step_override
                          : std::pow(h, static_cast<double>(q_eff + 2) /
                                            static_cast<double>(config.interp_order + 1));
    const double half_width =
        config.domain_half_width > 0.0
            ? config.domain_half_width
            : 8.0 * std::sqrt(problem.horizon) +
                  std::sqrt(2.0 * depth * h) * rule.nodes.back();
    const SpaceGrid grid = make_grid(half_width, dx);
    if (grid.size() < config.interp_order + 1) {
        throw std::invalid_argument("grid too coarse for the interpolation order");
    }

    SolveOutput out;
    out.fields.resize(N + 1);
    out.fields[N] = terminal_level(problem, grid);
    out.fields[N].level = N;

    int first_step;
    if (adapted) {
        std::vector<SolutionField> boots = bootstrap_levels(problem, grid, N, q, config);
        for (int j = 0; j < q; ++j) out.fields[N - q + j] = std::move(boots[j]);
        first_step = N - q - 1;
    } else {
        first_step = N - 1;
    }

    const StepContext ctx = make_context(problem, config, rule);
    std::optional<double> fixed;
    if (!adapted) fixed = config.theta;
    for (int n = first_step; n >= 0; --n) {
        std::span<const SolutionField> future(&out.fields[n + 1], depth);
        BackwardStepResult step =
            step_level(n, n * h, h, depth, future, fixed, config.limits, ctx);
        out.invalid_y += step.invalid_y;
        out.invalid_z += step.invalid_z;
        out.fields[n] = std::move(step.field);
    }

    out.y0 = out.fields[0].y.values[grid.half_count];
    out.z0 = out.fields[0].z.values[grid.half_count];
    return out;
}

}  // namespace adtheta
