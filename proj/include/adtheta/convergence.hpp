#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adtheta/bsde.hpp"

namespace adtheta {

/// Slope p of the least-squares line log(err) = c + p log(h). Requires equal
/// lengths >= 2, distinct positive hs and strictly positive finite errors
/// (callers must filter round-off-floor rows first).
double fit_convergence_rate(std::span<const double> hs, std::span<const double> errs);

/// Rows with errors at or below this value sit on the double-precision
/// round-off floor and are excluded from rate fits.
inline constexpr double kRateFitFloor = 1e-12;

/// Scheme selector parsed from tokens "cn", "ada2".."ada8" or "theta:R".
struct SchemeChoice {
    std::string label;
    bool adapted = false;
    int q = 0;        // adapted only
    double theta = 0.5;  // fixed only
};

SchemeChoice parse_scheme(const std::string& token);

struct StudySpec {
    enum class Target { integral, bsde };
    Target target = Target::integral;
    std::string problem_id = "example51";  // bsde target
    std::vector<std::string> schemes;
    std::vector<int> sizes;  // strictly increasing, >= 2 entries

    // integral target
    double a = -3.0;
    double b = 3.0;

    // overridable solver parameters; limits default to the per-target demo
    // values (integral: L_theta = 1, L_rho = 1e8; bsde: L_theta = 10,
    // L_rho = 1e30) when unset.
    std::optional<ThetaLimits> limits;
    int gh_points = 8;
    int interp_order = 5;
    BootstrapMode bootstrap = BootstrapMode::refined_cn;
    int bootstrap_substeps = 0;
    double domain_half_width = 0.0;
};

struct ReportRow {
    std::string scheme;
    int q = 0;  // adapted stencil order; 0 for fixed-theta schemes
    int n = 0;
    double h = 0.0;
    // bsde rows use err_y/err_z and both invalid counts; integral rows use
    // err_y/invalid_y as their single error and invalid count.
    double err_y = 0.0;
    double err_z = 0.0;
    long invalid_y = 0;
    long invalid_z = 0;
    bool below_floor_y = false;
    bool below_floor_z = false;
    bool failed = false;
    std::string message;
};

struct SchemeRates {
    std::string scheme;
    std::optional<double> cr_y;  // the single rate for integral studies
    std::optional<double> cr_z;
};

struct ConvergenceReport {
    StudySpec::Target target = StudySpec::Target::integral;
    std::string problem_id;
    double reference = 0.0;  // integral target: the Simpson reference value
    std::vector<ReportRow> rows;
    std::vector<SchemeRates> rates;

    bool any_failed() const;
};

/// Runs every (scheme, N) cell, measures errors against the exact solution
/// (bsde) or the composite-Simpson reference (integral), and fits per-scheme
/// rates over the rows above the round-off floor. Solver failures are
/// recorded in their row and the run continues.
ConvergenceReport run_convergence_study(const StudySpec& spec);

}  // namespace adtheta
