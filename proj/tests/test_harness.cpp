#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "adtheta/convergence.hpp"
#include "adtheta/problems.hpp"
#include "adtheta/report_io.hpp"

using namespace adtheta;

TEST_CASE("rate fit recovers exact power laws") {
    const std::vector<double> hs{1.0, 0.5, 0.25};
    const std::vector<double> errs{1e-2, 2.5e-3, 6.25e-4};
    CHECK(fit_convergence_rate(hs, errs) == doctest::Approx(2.0).epsilon(1e-12));

    std::vector<double> hs2, errs2;
    for (int k = 0; k < 6; ++k) {
        const double h = std::pow(0.5, k);
        hs2.push_back(h);
        errs2.push_back(3.4 * std::pow(h, 3.7));
    }
    CHECK(fit_convergence_rate(hs2, errs2) == doctest::Approx(3.7).epsilon(1e-12));
}

TEST_CASE("rate fit on the reference C-N error column") {
    const std::vector<double> hs{1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128};
    const std::vector<double> errs{8.077e-05, 2.041e-05, 5.146e-06, 1.304e-06, 3.323e-07};
    CHECK(std::abs(fit_convergence_rate(hs, errs) - 1.981) <= 0.001);
}

TEST_CASE("rate fit invariances and input validation") {
    const std::vector<double> hs{0.5, 0.25, 0.125, 0.0625};
    std::vector<double> errs{3e-3, 8e-4, 1.9e-4, 5.1e-5};
    const double base = fit_convergence_rate(hs, errs);

    std::vector<double> scaled = errs;
    for (double& e : scaled) e *= 77.0;
    CHECK(fit_convergence_rate(hs, scaled) == doctest::Approx(base).epsilon(1e-13));

    std::vector<double> hs_rev(hs.rbegin(), hs.rend());
    std::vector<double> errs_rev(errs.rbegin(), errs.rend());
    CHECK(fit_convergence_rate(hs_rev, errs_rev) == doctest::Approx(base).epsilon(1e-13));

    CHECK_THROWS_AS(fit_convergence_rate(std::vector<double>{0.5}, std::vector<double>{1e-3}),
                    std::invalid_argument);
    CHECK_THROWS_AS(fit_convergence_rate(hs, std::vector<double>{1e-3, 0.0, 1e-4, 1e-5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(fit_convergence_rate(hs, std::vector<double>{1e-3, -1e-4, 1e-4, 1e-5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        fit_convergence_rate(std::vector<double>{0.5, 0.5}, std::vector<double>{1e-3, 1e-4}),
        std::invalid_argument);
}

TEST_CASE("builtin problems") {
    const BsdeProblem ex = builtin_problem("example51");
    CHECK(ex.f(0.0, 1.0) == doctest::Approx(0.0));
    REQUIRE(ex.exact.has_value());
    CHECK(ex.exact->y(0.0, 0.0) == 0.5);
    CHECK(ex.exact->z(0.0, 0.0) == 0.25);

    // f_y and phi_x agree with central differences.
    for (double y : {0.0, 0.3, 0.9}) {
        const double fd = (ex.f(0.0, y + 1e-7) - ex.f(0.0, y - 1e-7)) / 2e-7;
        CHECK(std::abs(ex.f_y(0.0, y) - fd) <= 1e-6);
    }
    for (double x : {-1.0, 0.0, 0.7}) {
        const double fd = (ex.phi(x + 1e-7) - ex.phi(x - 1e-7)) / 2e-7;
        CHECK(std::abs(ex.phi_x(x) - fd) <= 1e-6);
    }

    CHECK(builtin_problem("zero_gen_linear").f(0.3, 4.0) == 0.0);
    CHECK(builtin_problem("zero_gen_square").phi(3.0) == 9.0);
    CHECK_THROWS_AS(builtin_problem("nope"), std::invalid_argument);
    CHECK(builtin_problem_ids().size() == 3);
}

TEST_CASE("scheme token parsing") {
    CHECK_FALSE(parse_scheme("cn").adapted);
    CHECK(parse_scheme("cn").theta == 0.5);
    CHECK(parse_scheme("ada3").adapted);
    CHECK(parse_scheme("ada3").q == 3);
    CHECK(parse_scheme("theta:0.25").theta == 0.25);
    CHECK_FALSE(parse_scheme("theta:0.25").adapted);
    CHECK_THROWS_AS(parse_scheme("ada9"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scheme("theta:x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scheme("simpson"), std::invalid_argument);
}

TEST_CASE("study spec validation") {
    StudySpec spec;
    spec.target = StudySpec::Target::integral;
    spec.sizes = {128, 256};
    CHECK_THROWS_AS(run_convergence_study(spec), std::invalid_argument);  // no schemes

    spec.schemes = {"cn"};
    spec.sizes = {256, 128};
    CHECK_THROWS_AS(run_convergence_study(spec), std::invalid_argument);  // not increasing

    spec.sizes = {128};
    CHECK_THROWS_AS(run_convergence_study(spec), std::invalid_argument);  // too few
}

TEST_CASE("integral study produces rows, rates and reports") {
    StudySpec spec;
    spec.target = StudySpec::Target::integral;
    spec.schemes = {"cn", "ada2"};
    spec.sizes = {128, 256, 512};

    const ConvergenceReport report = run_convergence_study(spec);
    REQUIRE(report.rows.size() == 6);
    CHECK_FALSE(report.any_failed());
    REQUIRE(report.rates.size() == 2);
    CHECK(report.rates[0].scheme == "cn");
    CHECK(report.rates[0].cr_y.value() == doctest::Approx(2.0).epsilon(0.15));
    CHECK(report.rates[1].cr_y.value() > 2.7);
    CHECK_FALSE(report.rates[0].cr_z.has_value());

    const std::string csv = render_csv(report);
    CHECK(csv.rfind("scheme,q,N,h,err,invalid\n", 0) == 0);

    // Rows come out sorted by (scheme, N) and the fitted rate is
    // recomputable from the emitted text.
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);  // header
    std::vector<double> hs, errs;
    bool first = true;
    while (std::getline(lines, line)) {
        if (first) {
            CHECK(line.rfind("ada2,2,128,", 0) == 0);
            first = false;
        }
        double h = 0.0, err = 0.0;
        int q = 0, n = 0;
        long invalid = 0;
        if (std::sscanf(line.c_str(), "ada2,%d,%d,%lf,%lf,%ld", &q, &n, &h, &err, &invalid) == 5) {
            hs.push_back(h);
            errs.push_back(err);
        }
    }
    REQUIRE(hs.size() == 3);
    // CSV carries 6 significant digits, so the refit agrees to ~1e-5.
    CHECK(fit_convergence_rate(hs, errs) ==
          doctest::Approx(report.rates[1].cr_y.value()).epsilon(1e-4));

    // JSON mirrors the rows with full-precision value equality.
    const std::string json_text = render_json(report);
    const nlohmann::json parsed = nlohmann::json::parse(json_text);
    CHECK(parsed["target"] == "integral");
    CHECK(parsed["rows"].size() == 6);
    CHECK(parsed["rows"][0]["scheme"] == "ada2");
    double ada2_128_err = -1.0;
    for (const ReportRow& row : report.rows) {
        if (row.scheme == "ada2" && row.n == 128) ada2_128_err = row.err_y;
    }
    CHECK(parsed["rows"][0]["err"].get<double>() == ada2_128_err);
    CHECK(parsed["rates"][1]["cr"].get<double>() ==
          doctest::Approx(report.rates[1].cr_y.value()).epsilon(1e-15));
    CHECK(parsed["failures"].empty());
}

TEST_CASE("bsde study records failures and keeps running") {
    StudySpec spec;
    spec.target = StudySpec::Target::bsde;
    spec.problem_id = "example51";
    spec.schemes = {"cn", "ada4"};
    spec.sizes = {4, 8};  // ada4 needs N > 4, so its first cell fails

    const ConvergenceReport report = run_convergence_study(spec);
    REQUIRE(report.rows.size() == 4);
    CHECK(report.any_failed());
    int failed = 0;
    for (const auto& row : report.rows) {
        if (row.failed) {
            ++failed;
            CHECK(row.scheme == "ada4");
            CHECK(row.n == 4);
            CHECK_FALSE(row.message.empty());
        }
    }
    CHECK(failed == 1);

    // Failed cells are omitted from the CSV but listed in the JSON.
    const std::string csv = render_csv(report);
    CHECK(csv.rfind("scheme,q,N,h,err_y,err_z,invalid_y,invalid_z\n", 0) == 0);
    int lines = 0;
    for (char ch : csv) lines += ch == '\n';
    CHECK(lines == 4);  // header + 3 surviving rows

    const nlohmann::json parsed = nlohmann::json::parse(render_json(report));
    REQUIRE(parsed["failures"].size() == 1);
    CHECK(parsed["failures"][0]["scheme"] == "ada4");
    CHECK(parsed["failures"][0]["N"] == 4);
}

TEST_CASE("reports are deterministic and file emission round-trips") {
    StudySpec spec;
    spec.target = StudySpec::Target::integral;
    spec.schemes = {"ada2", "cn"};
    spec.sizes = {128, 256};

    const ConvergenceReport a = run_convergence_study(spec);
    const ConvergenceReport b = run_convergence_study(spec);
    CHECK(render_csv(a) == render_csv(b));
    CHECK(render_json(a) == render_json(b));

    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "adtheta_report_test.csv";
    emit_report(a, ReportFormat::csv, path.string());
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str() == render_csv(a));
    std::filesystem::remove(path);

    CHECK_THROWS_WITH_AS(emit_report(a, ReportFormat::csv, "/nonexistent-dir/report.csv"),
                         doctest::Contains("/nonexistent-dir/report.csv"),
                         std::runtime_error);
}

TEST_CASE("empty report renders a header-only CSV") {
    ConvergenceReport report;
    report.target = StudySpec::Target::integral;
    CHECK(render_csv(report) == "scheme,q,N,h,err,invalid\n");
    report.target = StudySpec::Target::bsde;
    CHECK(render_csv(report) == "scheme,q,N,h,err_y,err_z,invalid_y,invalid_z\n");
}
