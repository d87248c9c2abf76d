// Command-line driver: one-off quadrature and BSDE runs plus the
// convergence-study harness with CSV/JSON reports.
#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adtheta/convergence.hpp"
#include "adtheta/problems.hpp"
#include "adtheta/quad1d.hpp"
#include "adtheta/report_io.hpp"

using namespace adtheta;

namespace {

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t comma = csv.find(',', start);
        const std::string item = csv.substr(start, comma - start);
        if (!item.empty()) out.push_back(item);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

struct IntegrateArgs {
    int q = 2;
    int n = 128;
    double a = -3.0;
    double b = 3.0;
    double l_theta = 1.0;
    double l_rho = 1e8;
    double theta = std::nan("");  // set -> fixed-theta rule
};

int run_integrate(const IntegrateArgs& args) {
    const PartitionSpec part{args.a, args.b, args.n};
    const IntegralResult res =
        std::isnan(args.theta)
            ? integrate_adapted(reference_integrand, part, args.q,
                                ThetaLimits{args.l_theta, args.l_rho})
            : integrate_fixed_theta(reference_integrand, part, args.theta);
    const double reference = composite_simpson(reference_integrand, args.a, args.b, 1000000);

    long forward_invalid = 0;
    const int fwd_end = args.n - args.q - 1;
    for (int i = 0; i < static_cast<int>(res.decisions.size()); ++i) {
        if (i <= fwd_end && !res.decisions[i].valid) ++forward_invalid;
    }
    std::printf("value     = %.12e\n", res.value);
    std::printf("reference = %.12e (composite Simpson, 1e6 panels)\n", reference);
    std::printf("error     = %.6e\n", std::abs(res.value - reference));
    if (std::isnan(args.theta)) {
        std::printf("invalid   = %ld (forward-stencil region: %ld)\n", res.invalid_count,
                    forward_invalid);
    } else {
        std::printf("invalid   = %ld\n", res.invalid_count);
    }
    return 0;
}

struct BsdeArgs {
    std::string problem = "example51";
    std::string scheme = "cn";
    int n = 32;
    int gh_points = 8;
    int interp_order = 5;
    double half_width = 0.0;
    std::string bootstrap = "refined";
    int substeps = 0;
    double l_theta = 10.0;
    double l_rho = 1e30;
};

int run_bsde(const BsdeArgs& args) {
    const BsdeProblem problem = builtin_problem(args.problem);
    const SchemeChoice choice = parse_scheme(args.scheme);
    SchemeConfig config =
        choice.adapted ? SchemeConfig::adapted(choice.q) : SchemeConfig::fixed(choice.theta);
    config.limits = ThetaLimits{args.l_theta, args.l_rho};
    config.gh_points = args.gh_points;
    config.interp_order = args.interp_order;
    config.domain_half_width = args.half_width;
    config.bootstrap_substeps = args.substeps;
    if (args.bootstrap == "exact") {
        config.bootstrap = BootstrapMode::exact_solution;
    } else if (args.bootstrap != "refined") {
        throw CLI::ValidationError("--bootstrap must be refined or exact");
    }

    const SolveOutput out = solve_bsde(problem, args.n, config);
    std::printf("y0 = %.12e\n", out.y0);
    std::printf("z0 = %.12e\n", out.z0);
    if (problem.exact) {
        std::printf("err_y = %.6e\n", std::abs(out.y0 - problem.exact->y(0.0, 0.0)));
        std::printf("err_z = %.6e\n", std::abs(out.z0 - problem.exact->z(0.0, 0.0)));
    }
    std::printf("invalid_y = %ld\ninvalid_z = %ld\n", out.invalid_y, out.invalid_z);
    return 0;
}

struct StudyArgs {
    std::string target = "integral";
    std::string schemes;
    std::string sizes;
    std::string out;
    std::string format = "csv";
    int gh_points = 8;
    int interp_order = 5;
    double half_width = 0.0;
    std::string bootstrap = "refined";
    int substeps = 0;
};

int run_study(const StudyArgs& args) {
    StudySpec spec;
    if (args.target == "integral") {
        spec.target = StudySpec::Target::integral;
        spec.schemes = {"cn", "ada2", "ada3"};
        spec.sizes = {128, 256, 512, 1024, 2048, 4096};
    } else if (args.target.rfind("bsde:", 0) == 0) {
        spec.target = StudySpec::Target::bsde;
        spec.problem_id = args.target.substr(5);
        spec.schemes = {"cn", "ada2", "ada3", "ada4"};
        spec.sizes = {8, 16, 32, 64, 128};
    } else {
        throw CLI::ValidationError("--target must be integral or bsde:<problem id>");
    }
    if (!args.schemes.empty()) spec.schemes = split_list(args.schemes);
    if (!args.sizes.empty()) {
        spec.sizes.clear();
        for (const std::string& item : split_list(args.sizes)) spec.sizes.push_back(std::stoi(item));
    }
    spec.gh_points = args.gh_points;
    spec.interp_order = args.interp_order;
    spec.domain_half_width = args.half_width;
    spec.bootstrap_substeps = args.substeps;
    if (args.bootstrap == "exact") {
        spec.bootstrap = BootstrapMode::exact_solution;
    } else if (args.bootstrap != "refined") {
        throw CLI::ValidationError("--bootstrap must be refined or exact");
    }

    const ConvergenceReport report = run_convergence_study(spec);
    const ReportFormat format = args.format == "json" ? ReportFormat::json : ReportFormat::csv;
    if (args.format != "csv" && args.format != "json") {
        throw CLI::ValidationError("--format must be csv or json");
    }
    if (args.out.empty() || args.out == "-") {
        std::fputs((format == ReportFormat::csv ? render_csv(report) : render_json(report)).c_str(),
                   stdout);
    } else {
        emit_report(report, format, args.out);
        std::printf("wrote %s\n", args.out.c_str());
    }
    for (const ReportRow& row : report.rows) {
        if (row.failed) {
            std::fprintf(stderr, "cell failed: %s N=%d: %s\n", row.scheme.c_str(), row.n,
                         row.message.c_str());
        }
    }
    return report.any_failed() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adapted theta-scheme quadrature and BSDE solver"};
    app.require_subcommand(1);

    IntegrateArgs iargs;
    CLI::App* integrate = app.add_subcommand(
        "integrate", "integrate t^3 exp(-(t-1/2)^2) with the adapted or fixed-theta rule");
    integrate->add_option("--q", iargs.q, "adapted stencil order (1..8)");
    integrate->add_option("--n", iargs.n, "number of subintervals");
    integrate->add_option("--a", iargs.a, "left endpoint");
    integrate->add_option("--b", iargs.b, "right endpoint");
    integrate->add_option("--l-theta", iargs.l_theta, "validity bound on |theta|");
    integrate->add_option("--l-rho", iargs.l_rho, "validity bound on |rho|^{-1}");
    integrate->add_option("--theta", iargs.theta, "use the fixed-theta rule with this weight");

    BsdeArgs bargs;
    CLI::App* bsde = app.add_subcommand("bsde", "solve a registered BSDE problem backward");
    bsde->add_option("--problem", bargs.problem, "problem id (see --list via study docs)");
    bsde->add_option("--scheme", bargs.scheme, "cn | ada2 | ada3 | ada4 | theta:R");
    bsde->add_option("--n", bargs.n, "number of time steps");
    bsde->add_option("--gh-points", bargs.gh_points, "Gauss-Hermite points");
    bsde->add_option("--interp-order", bargs.interp_order, "space interpolation order");
    bsde->add_option("--half-width", bargs.half_width, "space domain half width (0 = auto)");
    bsde->add_option("--bootstrap", bargs.bootstrap, "refined | exact");
    bsde->add_option("--substeps", bargs.substeps, "refined-bootstrap substeps per step (0 = N)");
    bsde->add_option("--l-theta", bargs.l_theta, "validity bound on |theta|");
    bsde->add_option("--l-rho", bargs.l_rho, "validity bound on |rho|^{-1}");

    StudyArgs sargs;
    CLI::App* study = app.add_subcommand("study", "run a convergence study and emit a report");
    study->add_option("--target", sargs.target, "integral | bsde:<problem id>");
    study->add_option("--schemes", sargs.schemes, "comma list, e.g. cn,ada2,ada3");
    study->add_option("--sizes", sargs.sizes, "comma list of partition sizes");
    study->add_option("--out", sargs.out, "output path (default: stdout)");
    study->add_option("--format", sargs.format, "csv | json");
    study->add_option("--gh-points", sargs.gh_points, "Gauss-Hermite points");
    study->add_option("--interp-order", sargs.interp_order, "space interpolation order");
    study->add_option("--half-width", sargs.half_width, "space domain half width (0 = auto)");
    study->add_option("--bootstrap", sargs.bootstrap, "refined | exact");
    study->add_option("--substeps", sargs.substeps, "refined-bootstrap substeps per step (0 = N)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (integrate->parsed()) return run_integrate(iargs);
        if (bsde->parsed()) return run_bsde(bargs);
        return run_study(sargs);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
