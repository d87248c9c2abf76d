#include "adtheta/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace adtheta {
namespace {

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

BsdeProblem make_example51() {
    BsdeProblem p;
    p.horizon = 1.0;
    p.f = [](double, double y) { return ((-y + 2.5) * y - 1.5) * y; };
    p.f_y = [](double, double y) { return (-3.0 * y + 5.0) * y - 1.5; };
    p.phi = [](double x) { return logistic(x + 1.0); };
    p.phi_x = [](double x) {
        const double s = logistic(x + 1.0);
        return s * (1.0 - s);
    };
    p.exact = ExactSolution{
        [](double t, double x) { return logistic(x + t); },
        [](double t, double x) {
            const double s = logistic(x + t);
            return s * (1.0 - s);
        }};
    return p;
}

BsdeProblem make_zero_gen_linear() {
    BsdeProblem p;
    p.horizon = 1.0;
    p.f = [](double, double) { return 0.0; };
    p.f_y = [](double, double) { return 0.0; };
    p.phi = [](double x) { return x; };
    p.phi_x = [](double) { return 1.0; };
    p.exact = ExactSolution{[](double, double x) { return x; },
                            [](double, double) { return 1.0; }};
    return p;
}

BsdeProblem make_zero_gen_square() {
    BsdeProblem p;
    p.horizon = 1.0;
    p.f = [](double, double) { return 0.0; };
    p.f_y = [](double, double) { return 0.0; };
    p.phi = [](double x) { return x * x; };
    p.phi_x = [](double x) { return 2.0 * x; };
    p.exact = ExactSolution{[](double t, double x) { return x * x + (1.0 - t); },
                            [](double, double x) { return 2.0 * x; }};
    return p;
}

}  // namespace

BsdeProblem builtin_problem(const std::string& id) {
    if (id == "example51") return make_example51();
    if (id == "zero_gen_linear") return make_zero_gen_linear();
    if (id == "zero_gen_square") return make_zero_gen_square();
    throw std::invalid_argument("unknown problem id: " + id);
}

std::vector<std::string> builtin_problem_ids() {
    return {"example51", "zero_gen_linear", "zero_gen_square"};
}

}  // namespace adtheta
