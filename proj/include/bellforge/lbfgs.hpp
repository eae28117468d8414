#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace bellforge {

/// Evaluate the objective at x and fill grad (same length as x).
using ObjectiveFn =
    std::function<double(std::span<const double> x, std::span<double> grad)>;

struct LbfgsOptions {
    int memory = 10;
    double c1 = 1e-4;            ///< sufficient-decrease coefficient
    double c2 = 0.9;             ///< curvature coefficient (strong Wolfe)
    double grad_tol = 1e-9;      ///< stop when ||g||_inf falls below this
    double cost_tol = 1e-12;     ///< stop when |f_k - f_{k+1}| falls below this
    int max_iterations = 5000;
    int max_line_search = 60;
};

struct LbfgsResult {
    std::vector<double> x;
    double cost = 0;
    int iterations = 0;
    bool converged = false;      ///< a stopping tolerance was met
    std::string status;          ///< "gradient", "cost-change", "max-iterations",
                                 ///< "line-search-failed"
};

/// Limited-memory BFGS with a strong-Wolfe line search. Accepted iterates have
/// monotonically non-increasing cost. A line-search failure is reported through
/// the status field with the last accepted iterate, not thrown.
/// on_iterate, when set, is called after every accepted step.
LbfgsResult lbfgs_minimize(
    const ObjectiveFn& objective, std::vector<double> init, const LbfgsOptions& options,
    const std::function<void(int iteration, std::span<const double> x, double cost)>&
        on_iterate = {});

}  // namespace bellforge
