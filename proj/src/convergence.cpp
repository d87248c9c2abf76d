#include "adtheta/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "adtheta/problems.hpp"
#include "adtheta/quad1d.hpp"

namespace adtheta {
namespace {

void validate_spec(const StudySpec& spec) {
    if (spec.schemes.empty()) throw std::invalid_argument("study needs at least one scheme");
    if (spec.sizes.size() < 2) throw std::invalid_argument("study needs at least two sizes");
    for (std::size_t i = 1; i < spec.sizes.size(); ++i) {
        if (spec.sizes[i] <= spec.sizes[i - 1]) {
            throw std::invalid_argument("study sizes must be strictly increasing");
        }
    }
}

std::optional<double> fit_over_floor(const std::vector<ReportRow>& rows,
                                     const std::string& scheme,
                                     bool use_z) {
    std::vector<double> hs, errs;
    for (const ReportRow& row : rows) {
        if (row.scheme != scheme || row.failed) continue;
        const double err = use_z ? row.err_z : row.err_y;
        if (!std::isfinite(err) || err <= kRateFitFloor) continue;
        hs.push_back(row.h);
        errs.push_back(err);
    }
    if (hs.size() < 2) return std::nullopt;
    return fit_convergence_rate(hs, errs);
}

SchemeConfig bsde_config(const SchemeChoice& choice, const StudySpec& spec) {
    SchemeConfig config = choice.adapted ? SchemeConfig::adapted(choice.q)
                                         : SchemeConfig::fixed(choice.theta);
    config.limits = spec.limits.value_or(ThetaLimits{10.0, 1e30});
    config.gh_points = spec.gh_points;
    config.interp_order = spec.interp_order;
    config.bootstrap = spec.bootstrap;
    config.bootstrap_substeps = spec.bootstrap_substeps;
    config.domain_half_width = spec.domain_half_width;
    return config;
}

}  // namespace

double fit_convergence_rate(std::span<const double> hs, std::span<const double> errs) {
    if (hs.size() != errs.size() || hs.size() < 2) {
        throw std::invalid_argument("rate fit needs two or more (h, err) pairs");
    }
    for (std::size_t i = 0; i < hs.size(); ++i) {
        if (!(hs[i] > 0.0) || !std::isfinite(hs[i])) {
            throw std::invalid_argument("rate fit requires positive finite step sizes");
        }
        if (!(errs[i] > 0.0) || !std::isfinite(errs[i])) {
            throw std::invalid_argument("rate fit requires strictly positive finite errors");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (hs[i] == hs[j]) throw std::invalid_argument("rate fit requires distinct step sizes");
        }
    }

    const std::size_t n = hs.size();
    double mean_x = 0.0;
    for (double h : hs) mean_x += std::log(h);
    mean_x /= static_cast<double>(n);

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(hs[i]) - mean_x;
        num += dx * std::log(errs[i]);
        den += dx * dx;
    }
    return num / den;
}

SchemeChoice parse_scheme(const std::string& token) {
    SchemeChoice choice;
    choice.label = token;
    if (token == "cn") {
        choice.theta = 0.5;
        return choice;
    }
    if (token.rfind("ada", 0) == 0) {
        const std::string tail = token.substr(3);
        if (tail.size() == 1 && tail[0] >= '1' && tail[0] <= '8') {
            choice.adapted = true;
            choice.q = tail[0] - '0';
            return choice;
        }
        throw std::invalid_argument("unknown scheme token: " + token);
    }
    if (token.rfind("theta:", 0) == 0) {
        std::size_t used = 0;
        const std::string tail = token.substr(6);
        double theta = 0.0;
        try {
            theta = std::stod(tail, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("unparsable theta in scheme token: " + token);
        }
        if (used != tail.size() || !std::isfinite(theta)) {
            throw std::invalid_argument("unparsable theta in scheme token: " + token);
        }
        choice.theta = theta;
        return choice;
    }
    throw std::invalid_argument("unknown scheme token: " + token);
}

bool ConvergenceReport::any_failed() const {
    return std::any_of(rows.begin(), rows.end(),
                       [](const ReportRow& r) { return r.failed; });
}

ConvergenceReport run_convergence_study(const StudySpec& spec) {
    validate_spec(spec);

    std::vector<SchemeChoice> choices;
    choices.reserve(spec.schemes.size());
    for (const std::string& token : spec.schemes) choices.push_back(parse_scheme(token));

    ConvergenceReport report;
    report.target = spec.target;

    if (spec.target == StudySpec::Target::integral) {
        report.reference = composite_simpson(reference_integrand, spec.a, spec.b, 1'000'000);
        const ThetaLimits limits = spec.limits.value_or(ThetaLimits{1.0, 1e8});
        for (const SchemeChoice& choice : choices) {
            for (int n : spec.sizes) {
                ReportRow row;
                row.scheme = choice.label;
                row.q = choice.adapted ? choice.q : 0;
                row.n = n;
                row.h = (spec.b - spec.a) / n;
                try {
                    const PartitionSpec part{spec.a, spec.b, n};
                    const IntegralResult res =
                        choice.adapted
                            ? integrate_adapted(reference_integrand, part, choice.q, limits)
                            : integrate_fixed_theta(reference_integrand, part, choice.theta);
                    row.err_y = std::abs(res.value - report.reference);
                    row.invalid_y = res.invalid_count;
                    row.below_floor_y = row.err_y <= kRateFitFloor;
                } catch (const std::exception& e) {
                    row.failed = true;
                    row.message = e.what();
                }
                report.rows.push_back(std::move(row));
            }
        }
    } else {
        report.problem_id = spec.problem_id;
        const BsdeProblem problem = builtin_problem(spec.problem_id);
        if (!problem.exact) {
            throw std::invalid_argument("convergence study requires a problem with an exact solution");
        }
        const double y_ref = problem.exact->y(0.0, 0.0);
        const double z_ref = problem.exact->z(0.0, 0.0);
        for (const SchemeChoice& choice : choices) {
            const SchemeConfig config = bsde_config(choice, spec);
            for (int n : spec.sizes) {
                ReportRow row;
                row.scheme = choice.label;
                row.q = choice.adapted ? choice.q : 0;
                row.n = n;
                row.h = problem.horizon / n;
                try {
                    const SolveOutput out = solve_bsde(problem, n, config);
                    row.err_y = std::abs(out.y0 - y_ref);
                    row.err_z = std::abs(out.z0 - z_ref);
                    row.invalid_y = out.invalid_y;
                    row.invalid_z = out.invalid_z;
                    row.below_floor_y = row.err_y <= kRateFitFloor;
                    row.below_floor_z = row.err_z <= kRateFitFloor;
                } catch (const std::exception& e) {
                    row.failed = true;
                    row.message = e.what();
                }
                report.rows.push_back(std::move(row));
            }
        }
    }

    for (const SchemeChoice& choice : choices) {
        SchemeRates rates;
        rates.scheme = choice.label;
        rates.cr_y = fit_over_floor(report.rows, choice.label, false);
        if (spec.target == StudySpec::Target::bsde) {
            rates.cr_z = fit_over_floor(report.rows, choice.label, true);
        }
        report.rates.push_back(std::move(rates));
    }
    return report;
}

}  // namespace adtheta
