#include "bellforge/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace bellforge {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double inf_norm(std::span<const double> v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

struct Correction {
    std::vector<double> s, y;
    double rho;
};

}  // namespace

LbfgsResult lbfgs_minimize(
    const ObjectiveFn& objective, std::vector<double> init, const LbfgsOptions& options,
    const std::function<void(int, std::span<const double>, double)>& on_iterate) {
    const std::size_t n = init.size();
    std::vector<double> x = std::move(init);
    std::vector<double> g(n), g_new(n), d(n), x_trial(n);
    double f = objective(x, g);

    std::deque<Correction> history;
    LbfgsResult result;
    result.status = "max-iterations";

    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        result.iterations = iter - 1;
        if (inf_norm(g) < options.grad_tol) {
            result.converged = true;
            result.status = "gradient";
            break;
        }

        // Two-loop recursion for d = -H g.
        d.assign(g.begin(), g.end());
        std::vector<double> alpha(history.size());
        for (std::size_t i = history.size(); i-- > 0;) {
            const Correction& c = history[i];
            alpha[i] = c.rho * dot(c.s, d);
            for (std::size_t k = 0; k < n; ++k) d[k] -= alpha[i] * c.y[k];
        }
        if (!history.empty()) {
            const Correction& last = history.back();
            const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
            for (double& v : d) v *= gamma;
        }
        for (std::size_t i = 0; i < history.size(); ++i) {
            const Correction& c = history[i];
            const double beta = c.rho * dot(c.y, d);
            for (std::size_t k = 0; k < n; ++k) d[k] += (alpha[i] - beta) * c.s[k];
        }
        for (double& v : d) v = -v;

        double dg = dot(d, g);
        if (dg >= 0) {  // not a descent direction; fall back to steepest descent
            history.clear();
            for (std::size_t k = 0; k < n; ++k) d[k] = -g[k];
            dg = -dot(g, g);
            if (dg >= 0) {
                result.converged = true;
                result.status = "gradient";
                break;
            }
        }

        // Strong Wolfe line search (bracket, then zoom by bisection).
        const double f0 = f;
        const double dphi0 = dg;
        auto eval = [&](double step) {
            for (std::size_t k = 0; k < n; ++k) x_trial[k] = x[k] + step * d[k];
            const double ft = objective(x_trial, g_new);
            return std::pair{ft, dot(g_new, d)};
        };

        int evals = 0;
        double step = 1.0, step_prev = 0.0;
        double f_prev = f0, found_step = -1.0, found_f = 0.0;
        double lo = 0, hi = 0, f_lo = f0;
        bool bracketed = false;
        while (evals < options.max_line_search) {
            auto [ft, dphit] = eval(step);
            ++evals;
            if (ft > f0 + options.c1 * step * dphi0 || (evals > 1 && ft >= f_prev)) {
                lo = step_prev;
                f_lo = f_prev;
                hi = step;
                bracketed = true;
                break;
            }
            if (std::abs(dphit) <= -options.c2 * dphi0) {
                found_step = step;
                found_f = ft;
                break;
            }
            if (dphit >= 0) {
                lo = step;
                f_lo = ft;
                hi = step_prev;
                bracketed = true;
                break;
            }
            step_prev = step;
            f_prev = ft;
            step = std::min(step * 2.0, 1e10);
        }
        if (bracketed) {
            while (evals < options.max_line_search) {
                const double mid = 0.5 * (lo + hi);
                auto [ft, dphit] = eval(mid);
                ++evals;
                if (ft > f0 + options.c1 * mid * dphi0 || ft >= f_lo) {
                    hi = mid;
                } else {
                    if (std::abs(dphit) <= -options.c2 * dphi0) {
                        found_step = mid;
                        found_f = ft;
                        break;
                    }
                    if (dphit * (hi - lo) >= 0) hi = lo;
                    lo = mid;
                    f_lo = ft;
                }
                if (std::abs(hi - lo) < 1e-16 * std::max(1.0, std::abs(lo))) {
                    if (f_lo < f0) {  // accept the best point in the collapsed bracket
                        auto [fl, dl] = eval(lo);
                        ++evals;
                        found_step = lo;
                        found_f = fl;
                    }
                    break;
                }
            }
        }

        if (found_step <= 0) {
            result.status = "line-search-failed";
            break;
        }

        // Accept the step; update the correction history.
        Correction c;
        c.s.resize(n);
        c.y.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            c.s[k] = found_step * d[k];
            x[k] += c.s[k];
            c.y[k] = g_new[k] - g[k];
        }
        g = g_new;
        const double f_old = f;
        f = found_f;
        const double sy = dot(c.s, c.y);
        if (sy > 1e-12 * std::sqrt(dot(c.s, c.s)) * std::sqrt(dot(c.y, c.y))) {
            c.rho = 1.0 / sy;
            history.push_back(std::move(c));
            if (static_cast<int>(history.size()) > options.memory) history.pop_front();
        }

        result.iterations = iter;
        if (on_iterate) on_iterate(iter, x, f);
        if (std::abs(f_old - f) < options.cost_tol) {
            result.converged = true;
            result.status = "cost-change";
            break;
        }
    }

    result.x = std::move(x);
    result.cost = f;
    return result;
}

}  // namespace bellforge
