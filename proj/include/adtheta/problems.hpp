#pragma once

#include <string>
#include <vector>

#include "adtheta/bsde.hpp"

namespace adtheta {

/// Registered benchmark problems:
///   "example51"       f(t,y) = -y^3 + 2.5 y^2 - 1.5 y, phi = logistic(x + T),
///                     T = 1, exact y = logistic(x + t), z = y (1 - y);
///                     at (0, 0) the exact solution is (1/2, 1/4).
///   "zero_gen_linear" f = 0, phi = x (martingale: y = x, z = 1).
///   "zero_gen_square" f = 0, phi = x^2 (y = x^2 + T - t, z = 2x).
/// Throws std::invalid_argument for unknown ids.
BsdeProblem builtin_problem(const std::string& id);

std::vector<std::string> builtin_problem_ids();

}  // namespace adtheta
