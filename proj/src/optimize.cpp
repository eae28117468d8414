#include "bellforge/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace bellforge {

namespace {

constexpr double kProbabilityFloor = 1e-12;
constexpr double kPruneTol = 1e-4;
constexpr double kPolishTarget = 1e-10;  // required 1 - F after polish

double squared_overlap(std::span<const cplx> chi, std::span<const cplx> target) {
    cplx ovl = 0;
    for (std::size_t i = 0; i < chi.size(); ++i) ovl += std::conj(target[i]) * chi[i];
    return std::norm(ovl);
}

double norm_sq(std::span<const cplx> v) {
    double s = 0;
    for (const cplx& a : v) s += std::norm(a);
    return s;
}

}  // namespace

OptimizerConfig OptimizerConfig::defaults_for(SchemeType type) {
    OptimizerConfig c;
    switch (type) {
        case SchemeType::SixMode: c.mu = 1e-3; break;
        case SchemeType::FiveMode: c.mu = 1e-4; break;
        case SchemeType::TwoStage: c.mu = 1e-2; break;
    }
    c.eps = 1e-5;
    return c;
}

SchemeObjective::SchemeObjective(SchemeSpec scheme)
    : scheme_(std::move(scheme)), layout_(clements_layout(scheme_.n_modes)) {
    scheme_.validate();
    params_per_mesh_ = 2 * static_cast<int>(layout_.size()) + scheme_.n_modes - 1;
    n_meshes_ = scheme_.two_stage() ? 2 : 1;
    logical_basis_ = shared_basis(2, 4);
    intermediate_basis_ = logical_basis_;
    const FockState target = scheme_.target_state();
    target_amps_.assign(target.amplitudes().begin(), target.amplitudes().end());
}

int SchemeObjective::n_parameters() const { return n_meshes_ * params_per_mesh_; }

std::vector<cplx> SchemeObjective::heralded_chi(std::span<const double> params,
                                                double* p1_out) const {
    if (static_cast<int>(params.size()) != n_parameters())
        throw std::invalid_argument("SchemeObjective: parameter vector length mismatch");
    const auto mesh_params = [&](int k) {
        return params.subspan(static_cast<std::size_t>(k) * params_per_mesh_,
                              static_cast<std::size_t>(params_per_mesh_));
    };
    const ComplexMatrix u1 = compose(unpack_parameters(mesh_params(0), scheme_.n_modes, layout_));

    if (!scheme_.two_stage()) {
        if (p1_out) *p1_out = -1;
        return heralded_block(u1, scheme_.input_occupation, scheme_.aux_modes,
                              scheme_.herald_pattern, *logical_basis_);
    }

    // Stage 1: herald one photon on a1; keep chi1 unnormalized so that the
    // final squared norm is p1 * p2 directly.
    std::vector<cplx> chi1 = heralded_block(u1, scheme_.input_occupation, scheme_.aux_modes,
                                            scheme_.herald_pattern, *intermediate_basis_);
    if (p1_out) *p1_out = norm_sq(chi1);

    const ComplexMatrix u2 = compose(unpack_parameters(mesh_params(1), scheme_.n_modes, layout_));
    const std::array<int, 1> stage2_aux{scheme_.fresh_photon_mode};
    const OccupationVector fresh{1};
    return heralded_block_state(u2, *intermediate_basis_, chi1, fresh, stage2_aux,
                                scheme_.stage2_herald, *logical_basis_);
}

double SchemeObjective::penalty(std::span<const double> params) const {
    double s = 0;
    for (int k = 0; k < n_meshes_; ++k) {
        const std::size_t base = static_cast<std::size_t>(k) * params_per_mesh_;
        for (std::size_t q = 0; q < layout_.size(); ++q) {
            const double st = std::sin(2.0 * params[base + 2 * q]);
            const double sp = std::sin(2.0 * params[base + 2 * q + 1]);
            s += st * st + sp * sp;
        }
    }
    return s;
}

double SchemeObjective::cost(std::span<const double> params, double mu, double eps) const {
    const std::vector<cplx> chi = heralded_chi(params, nullptr);
    const double p = norm_sq(chi);
    const double overlap = squared_overlap(chi, target_amps_);
    return -overlap * std::pow(std::max(p, kProbabilityFloor), mu - 1.0) +
           eps * penalty(params);
}

double SchemeObjective::infidelity_cost(std::span<const double> params) const {
    const std::vector<cplx> chi = heralded_chi(params, nullptr);
    const double p = norm_sq(chi);
    return -squared_overlap(chi, target_amps_) / std::max(p, kProbabilityFloor);
}

SchemeObjective::Quantities SchemeObjective::herald_quantities(
    std::span<const double> params) const {
    double p1 = -1;
    const std::vector<cplx> chi = heralded_chi(params, &p1);
    Quantities q;
    q.probability = norm_sq(chi);
    q.fidelity = q.probability > 0
                     ? squared_overlap(chi, target_amps_) / q.probability
                     : 0.0;
    if (p1 >= 0) {
        q.stage_probabilities = {p1, p1 > 0 ? q.probability / p1 : 0.0};
    } else {
        q.stage_probabilities = {q.probability};
    }
    return q;
}

std::vector<double> SchemeObjective::gradient(std::span<const double> params, double mu,
                                              double eps, double fd_step, bool polish) const {
    std::vector<double> x(params.begin(), params.end());
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double saved = x[i];
        x[i] = saved + fd_step;
        const double fp = polish ? infidelity_cost(x) : cost(x, mu, eps);
        x[i] = saved - fd_step;
        const double fm = polish ? infidelity_cost(x) : cost(x, mu, eps);
        x[i] = saved;
        g[i] = (fp - fm) / (2.0 * fd_step);
    }
    return g;
}

std::vector<Circuit> SchemeObjective::circuits_from(std::span<const double> params) const {
    if (static_cast<int>(params.size()) != n_parameters())
        throw std::invalid_argument("circuits_from: parameter vector length mismatch");
    std::vector<Circuit> out;
    for (int k = 0; k < n_meshes_; ++k) {
        Circuit c = unpack_parameters(
            params.subspan(static_cast<std::size_t>(k) * params_per_mesh_,
                           static_cast<std::size_t>(params_per_mesh_)),
            scheme_.n_modes, layout_);
        c.label = scheme_type_name(scheme_.type);
        if (scheme_.two_stage()) c.label += k == 0 ? " stage 1" : " stage 2";
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<double> SchemeObjective::parameters_of(std::span<const Circuit> circuits) const {
    if (static_cast<int>(circuits.size()) != n_meshes_)
        throw std::invalid_argument("parameters_of: wrong circuit count for scheme");
    std::vector<double> params;
    for (const Circuit& c : circuits) {
        if (c.n_modes != scheme_.n_modes ||
            c.gates.size() != layout_.size())
            throw std::invalid_argument("parameters_of: circuit does not match the mesh layout");
        const std::vector<double> p = pack_parameters(c);
        params.insert(params.end(), p.begin(), p.end());
    }
    return params;
}

std::vector<double> SchemeObjective::random_parameters(std::uint64_t seed, int restart) const {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> theta_dist(0.0, std::numbers::pi / 2.0);
    std::uniform_real_distribution<double> phase_dist(-std::numbers::pi, std::numbers::pi);
    std::vector<double> params;
    params.reserve(static_cast<std::size_t>(n_parameters()));
    for (int k = 0; k < n_meshes_; ++k) {
        for (std::size_t q = 0; q < layout_.size(); ++q) {
            params.push_back(theta_dist(rng));
            params.push_back(phase_dist(rng));
        }
        for (int i = 0; i + 1 < scheme_.n_modes; ++i) params.push_back(phase_dist(rng));
    }
    return params;
}

namespace {

struct RestartOutcome {
    int restart = 0;
    std::vector<double> x;
    double cost = 0;
    SchemeObjective::Quantities q;
    std::vector<TracePoint> trace;
    int nontrivial = 0;
};

int count_nontrivial(const SchemeObjective& obj, std::span<const double> params, double tol) {
    int n = 0;
    for (const Circuit& c : obj.circuits_from(params)) {
        PruneSummary s;
        prune_trivial(c, tol, &s);
        n += s.nontrivial_bs + s.nontrivial_phase_shifts;
    }
    return n;
}

/// Fidelity first (1e-9 window), then probability (1e-6 window), then fewer
/// non-trivial elements, then restart index for stability.
bool better_outcome(const RestartOutcome& a, const RestartOutcome& b) {
    if (a.q.fidelity > b.q.fidelity + 1e-9) return true;
    if (b.q.fidelity > a.q.fidelity + 1e-9) return false;
    if (a.q.probability > b.q.probability + 1e-6) return true;
    if (b.q.probability > a.q.probability + 1e-6) return false;
    if (a.nontrivial != b.nontrivial) return a.nontrivial < b.nontrivial;
    return a.restart < b.restart;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

OptimizationResult multistart(const SchemeSpec& scheme, const OptimizerConfig& config) {
    if (config.restarts < 1) throw std::invalid_argument("multistart: restarts must be >= 1");
    const SchemeObjective obj(scheme);

    LbfgsOptions opts;
    opts.grad_tol = config.grad_tol;
    opts.cost_tol = config.cost_tol;
    opts.max_iterations = config.max_iterations;

    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
    std::atomic<int> next{0};
    auto run_restart = [&](int r) {
        RestartOutcome& out = outcomes[static_cast<std::size_t>(r)];
        out.restart = r;
        const ObjectiveFn fn = [&](std::span<const double> x, std::span<double> grad) {
            if (!grad.empty()) {
                const std::vector<double> g =
                    obj.gradient(x, config.mu, config.eps, config.fd_step);
                std::copy(g.begin(), g.end(), grad.begin());
            }
            return obj.cost(x, config.mu, config.eps);
        };
        const auto on_iterate = [&](int iter, std::span<const double> x, double f) {
            const auto q = obj.herald_quantities(x);
            out.trace.push_back({r, iter, f, 1.0 - q.fidelity, q.probability});
        };
        const LbfgsResult res =
            lbfgs_minimize(fn, obj.random_parameters(config.seed, r), opts, on_iterate);
        out.x = res.x;
        out.cost = res.cost;
        out.q = obj.herald_quantities(out.x);
        out.nontrivial = count_nontrivial(obj, out.x, 1e-3);
    };

    const int threads = std::min(resolve_threads(config.threads), config.restarts);
    if (threads <= 1) {
        for (int r = 0; r < config.restarts; ++r) run_restart(r);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (int r = next.fetch_add(1); r < config.restarts; r = next.fetch_add(1))
                    run_restart(r);
            });
        }
        for (std::thread& t : pool) t.join();
    }

    const RestartOutcome* best = &outcomes.front();
    for (const RestartOutcome& o : outcomes)
        if (better_outcome(o, *best)) best = &o;

    OptimizationResult result;
    result.best_restart = best->restart;
    result.cost = best->cost;
    for (const RestartOutcome& o : outcomes)
        result.trace.insert(result.trace.end(), o.trace.begin(), o.trace.end());

    std::vector<Circuit> circuits = obj.circuits_from(best->x);
    result.converged = best->q.fidelity > 0.99;
    if (result.converged) {
        bool polished_ok = false;
        circuits = polish(std::move(circuits), scheme, &polished_ok);
        result.converged = polished_ok;
    }
    result.circuits = circuits;

    // Report quantities come from an independent full simulation, cross-checked
    // against the optimizer's own evaluation path.
    const CertificationReport report = certify(result.circuits, scheme);
    result.probability = report.success_probability;
    result.fidelity = report.fidelity;
    result.stage_probabilities = report.stage_probabilities;
    result.prune = report.prune;
    const auto q = obj.herald_quantities(obj.parameters_of(result.circuits));
    if (std::abs(q.probability - report.success_probability) > 1e-12 ||
        std::abs(q.fidelity - report.fidelity) > 1e-12)
        throw std::logic_error("multistart: simulate recomputation disagrees with optimizer");
    return result;
}

namespace {

double snap_half_pi(double v) {
    return std::round(v / (std::numbers::pi / 2)) * (std::numbers::pi / 2);
}

/// Minimize (1 - F) + w * sum sin^2(2 x_i) over the non-frozen coordinates,
/// plus a quadratic hinge that keeps the success probability at or above
/// p_floor (the conditional fidelity alone would happily trade probability
/// away, whether for sparsity or just by drifting along its flat optimum).
/// Frozen coordinates keep their exact values, typically multiples of pi/2.
std::vector<double> refine_free(const SchemeObjective& obj, std::vector<double> x,
                                const std::vector<char>& frozen, double w, double p_floor,
                                int max_iter) {
    std::vector<std::size_t> free_idx;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!frozen[i]) free_idx.push_back(i);
    if (free_idx.empty()) return x;

    std::vector<double> full = x;
    auto penalized = [&]() {
        const auto q = obj.herald_quantities(full);
        double c = 1.0 - q.fidelity;
        const double deficit = p_floor - q.probability;
        if (deficit > 0) c += 1e6 * deficit * deficit;
        if (w > 0)
            for (std::size_t i : free_idx) {
                const double s = std::sin(2.0 * full[i]);
                c += w * s * s;
            }
        return c;
    };

    const double h = 1e-6;
    const ObjectiveFn fn = [&](std::span<const double> xr, std::span<double> grad) {
        for (std::size_t k = 0; k < free_idx.size(); ++k) full[free_idx[k]] = xr[k];
        if (!grad.empty()) {
            for (std::size_t k = 0; k < free_idx.size(); ++k) {
                const double saved = full[free_idx[k]];
                full[free_idx[k]] = saved + h;
                const double fp = penalized();
                full[free_idx[k]] = saved - h;
                const double fm = penalized();
                full[free_idx[k]] = saved;
                grad[k] = (fp - fm) / (2 * h);
            }
        }
        return penalized();
    };

    LbfgsOptions opts;
    opts.grad_tol = 3e-9;  // the finite-difference noise floor
    opts.cost_tol = 0.0;
    opts.max_iterations = max_iter;
    std::vector<double> x0;
    x0.reserve(free_idx.size());
    for (std::size_t i : free_idx) x0.push_back(x[i]);
    const LbfgsResult res = lbfgs_minimize(fn, std::move(x0), opts);
    for (std::size_t k = 0; k < free_idx.size(); ++k) x[free_idx[k]] = res.x[k];
    return x;
}

/// Maximize the success probability over the maximal-fidelity manifold by
/// projected gradient ascent: step along the probability gradient, then
/// retract onto F = 1 by a fidelity refine whose probability floor gives back
/// only as much of the step as the retraction needs. A quasi-Newton climb on
/// a penalty formulation stalls here (any penalty stiff enough to hold the
/// manifold swamps the finite-difference gradients with noise), while the
/// retraction keeps every iterate exactly feasible.
std::vector<double> ascend_probability(const SchemeObjective& obj, std::vector<double> x,
                                       const std::vector<char>& frozen, int max_rounds) {
    std::vector<std::size_t> free_idx;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!frozen[i]) free_idx.push_back(i);
    if (free_idx.empty()) return x;

    auto quantities = [&](const std::vector<double>& v) { return obj.herald_quantities(v); };
    auto retract = [&](std::vector<double> v) {
        const double p_v = quantities(v).probability;
        for (double back : {1e-10, 1e-9, 1e-8, 1e-7, 1e-6, 1e-5}) {
            std::vector<double> t = refine_free(obj, v, frozen, 0.0, p_v - back, 800);
            if (1.0 - quantities(t).fidelity <= 1e-12) return t;
        }
        return refine_free(obj, std::move(v), frozen, 0.0, 0.0, 800);
    };

    const double h = 1e-6;
    double step = 1e-2;
    double p_cur = quantities(x).probability;
    for (int round = 0; round < max_rounds && step > 1e-8; ++round) {
        std::vector<double> g(free_idx.size());
        std::vector<double> probe = x;
        for (std::size_t k = 0; k < free_idx.size(); ++k) {
            const double saved = probe[free_idx[k]];
            probe[free_idx[k]] = saved + h;
            const double fp = quantities(probe).probability;
            probe[free_idx[k]] = saved - h;
            const double fm = quantities(probe).probability;
            probe[free_idx[k]] = saved;
            g[k] = (fp - fm) / (2 * h);
        }
        std::vector<double> trial = x;
        for (std::size_t k = 0; k < free_idx.size(); ++k) trial[free_idx[k]] += step * g[k];
        trial = retract(std::move(trial));
        const auto q = quantities(trial);
        if (1.0 - q.fidelity <= 1e-12 && q.probability > p_cur + 1e-14) {
            x = std::move(trial);
            p_cur = q.probability;
            step = std::min(step * 1.5, 1.0);
        } else {
            step *= 0.5;
        }
    }
    return x;
}

}  // namespace

std::vector<Circuit> polish(std::vector<Circuit> circuits, const SchemeSpec& scheme, bool* ok) {
    const SchemeObjective obj(scheme);
    auto infidelity = [&](std::span<const double> x) {
        return 1.0 - obj.herald_quantities(x).fidelity;
    };
    auto probability = [&](std::span<const double> x) {
        return obj.herald_quantities(x).probability;
    };

    const std::size_t n = static_cast<std::size_t>(obj.n_parameters());
    std::vector<char> frozen(n, 0);
    std::vector<double> x =
        refine_free(obj, obj.parameters_of(circuits), frozen, 0.0, 0.0, 3000);
    if (infidelity(x) > kPolishTarget) {
        if (ok) *ok = false;
        return circuits;  // polish failed; hand back the input untouched
    }
    double p_ref = probability(x);

    // The ascent and the freeze refines tolerate an infidelity of about 1e-12,
    // which lets the probability sit slightly past the constrained maximum (the
    // excess grows like the square root of the tolerated infidelity). Settling
    // gives back the smallest slack that brings the infidelity to the bottom,
    // so the result sits essentially on the manifold again.
    auto settle = [&](std::vector<double> v) {
        const double p_v = probability(v);
        for (double back : {0.0, 1e-9, 1e-8, 1e-7, 1e-6}) {
            std::vector<double> t = refine_free(obj, v, frozen, 0.0, p_v - back, 3000);
            if (infidelity(t) <= 1e-13) return t;
            if (back == 1e-6) v = std::move(t);  // keep the closest attempt
        }
        return v;
    };

    // Climb the maximal-fidelity manifold to its probability maximum; the
    // fidelity refine alone settles for whichever point of the flat fidelity
    // optimum it happened to reach.
    {
        std::vector<double> up = settle(ascend_probability(obj, x, frozen, 400));
        if (std::getenv("BELLFORGE_POLISH_DEBUG"))
            std::fprintf(stderr, "[polish] ascent inf=%.3g p=%.12g (was %.12g)\n",
                         infidelity(up), probability(up), p_ref);
        if (infidelity(up) <= kPolishTarget && probability(up) > p_ref) {
            x = std::move(up);
            p_ref = probability(x);
        }
    }

    // Greedy sparsification: freeze one angle at the nearest multiple of pi/2,
    // re-optimize the fidelity over the rest, and keep the freeze only if the
    // optimum is recovered without losing success probability. Beam-splitter
    // angles first (they decide the gate count), then the phases.
    const int per_mesh = obj.params_per_mesh();
    const int n_gates = static_cast<int>(obj.layout().size());
    const int n_meshes = static_cast<int>(n) / per_mesh;
    std::vector<std::size_t> theta_idx, phase_idx;
    for (int k = 0; k < n_meshes; ++k) {
        const std::size_t base = static_cast<std::size_t>(k) * per_mesh;
        for (int q = 0; q < n_gates; ++q) {
            theta_idx.push_back(base + 2 * static_cast<std::size_t>(q));
            phase_idx.push_back(base + 2 * static_cast<std::size_t>(q) + 1);
        }
        for (std::size_t i = base + 2 * static_cast<std::size_t>(n_gates);
             i < base + static_cast<std::size_t>(per_mesh); ++i)
            phase_idx.push_back(i);
    }

    std::mt19937_64 kick_rng(0x6b69636bu);
    auto try_freeze = [&](std::size_t i, double value) {
        std::vector<char> trial_frozen = frozen;
        trial_frozen[i] = 1;
        // First from the current point, then from a few perturbed starts: the
        // freeze may only be recoverable from a different basin of the free
        // parameters, which a local refine cannot reach on its own.
        std::normal_distribution<double> kick(0.0, 0.3);
        for (int attempt = 0; attempt < 4; ++attempt) {
            std::vector<double> trial = x;
            trial[i] = value;
            if (attempt > 0)
                for (std::size_t k = 0; k < trial.size(); ++k)
                    if (!trial_frozen[k]) trial[k] += kick(kick_rng);
            trial = refine_free(obj, std::move(trial), trial_frozen, 0.0, p_ref - 1e-7, 2000);
            if (infidelity(trial) <= 1e-12 && probability(trial) >= p_ref - 1e-7) {
                x = std::move(trial);
                frozen = std::move(trial_frozen);
                p_ref = std::max(p_ref, probability(x));
                return true;
            }
        }
        return false;
    };
    auto sweep = [&](const std::vector<std::size_t>& indices) {
        std::vector<std::pair<double, std::size_t>> order;
        for (std::size_t i : indices)
            if (!frozen[i]) order.emplace_back(std::abs(x[i] - snap_half_pi(x[i])), i);
        std::sort(order.begin(), order.end());
        bool any = false;
        for (const auto& [dist, i] : order) {
            const double near = snap_half_pi(x[i]);
            const double far = near + (x[i] >= near ? 1.0 : -1.0) * (std::numbers::pi / 2);
            if (try_freeze(i, near) || try_freeze(i, far)) any = true;
        }
        return any;
    };
    // Walk along the maximal-fidelity manifold toward the sparse corner before
    // attempting exact freezes; a one-at-a-time snap cannot make that move.
    auto dump_thetas = [&](const char* tag) {
        if (!std::getenv("BELLFORGE_POLISH_DEBUG")) return;
        std::fprintf(stderr, "[polish] %s theta dists:", tag);
        for (std::size_t i : theta_idx)
            std::fprintf(stderr, " %.3f", std::abs(x[i] - snap_half_pi(x[i])));
        std::fprintf(stderr, "\n");
    };
    dump_thetas("pre-drag");
    for (double w : {1e-4, 3e-4, 1e-3, 3e-3, 1e-2}) {
        x = refine_free(obj, std::move(x), frozen, w, p_ref, 1000);
        if (std::getenv("BELLFORGE_POLISH_DEBUG"))
            std::fprintf(stderr, "[polish] drag w=%g inf=%.3g p=%.12g\n", w, infidelity(x),
                         probability(x));
    }
    dump_thetas("post-drag");
    x = refine_free(obj, std::move(x), frozen, 0.0, p_ref, 3000);
    if (std::getenv("BELLFORGE_POLISH_DEBUG"))
        std::fprintf(stderr, "[polish] post-drag refine inf=%.3g p=%.12g (p_ref=%.12g)\n",
                     infidelity(x), probability(x), p_ref);
    if (infidelity(x) > kPolishTarget || probability(x) < p_ref - 1e-7) {
        // The drag left the optimum; restart the freezes from the plain optimum.
        x = refine_free(obj, obj.parameters_of(circuits), frozen, 0.0, p_ref, 3000);
        if (std::getenv("BELLFORGE_POLISH_DEBUG"))
            std::fprintf(stderr, "[polish] drag reverted\n");
    }
    p_ref = std::max(p_ref, probability(x));

    // Freezing a phase can make a splitter removable and vice versa, so keep
    // alternating the two sweeps until a full round changes nothing.
    for (bool progress = true; progress;) {
        progress = false;
        while (sweep(theta_idx)) progress = true;
        while (sweep(phase_idx)) progress = true;
    }
    dump_thetas("post-sweeps");

    // The relaxed freeze floor can let the probability sag a little along the
    // flat fidelity optimum; climb back up within the frozen circuit shape.
    {
        std::vector<double> up = settle(ascend_probability(obj, x, frozen, 200));
        if (infidelity(up) <= kPolishTarget && probability(up) > probability(x))
            x = std::move(up);
    }
    x = settle(std::move(x));
    if (infidelity(x) > kPolishTarget) {
        if (ok) *ok = false;
        return circuits;
    }
    if (ok) *ok = true;
    std::vector<Circuit> out = obj.circuits_from(x);
    for (std::size_t i = 0; i < out.size(); ++i) out[i].label = circuits[i].label;
    return out;
}

CertificationReport certify(std::span<const Circuit> circuits, const SchemeSpec& scheme) {
    CertificationReport report;
    for (const Circuit& c : circuits) {
        PruneSummary s;
        prune_trivial(c, kPruneTol, &s);
        report.prune.nontrivial_bs += s.nontrivial_bs;
        report.prune.nontrivial_phase_shifts += s.nontrivial_phase_shifts;
        report.prune.taus.insert(report.prune.taus.end(), s.taus.begin(), s.taus.end());
    }

    if (scheme.two_stage()) {
        if (circuits.size() != 2)
            throw std::invalid_argument("certify: two-stage scheme needs two circuits");
        const TwoStageResult r = run_two_stage(circuits[0], circuits[1], scheme);
        report.success_probability = r.overall;
        report.fidelity = r.fidelity;
        report.fidelity_defined = r.fidelity_defined;
        report.stage_probabilities = {r.p1, r.p2};
        report.byproduct_weight = r.fidelity_defined ? r.p2 * (1.0 - r.fidelity) : 0.0;
        for (const HeraldedOutcome& o : r.stage1_table)
            report.stage1_outcome_table.emplace_back(o.aux_pattern, o.probability);
        for (const HeraldedOutcome& o : r.stage2_table)
            report.outcome_table.emplace_back(o.aux_pattern, o.probability);
        if (r.fidelity_defined) {
            const auto& basis = r.final_state.basis();
            for (std::size_t i = 0; i < basis.size(); ++i) {
                const cplx a = r.final_state.amplitudes()[i];
                if (std::abs(a) > 1e-14)
                    report.conditional_amplitudes.push_back({basis.at(i), a});
            }
        }
    } else {
        if (circuits.size() != 1)
            throw std::invalid_argument("certify: single-stage scheme needs one circuit");
        const FockState output = evolve(compose(circuits[0]), scheme.input_occupation);
        const ResidualReport rr = residual_report(output, scheme);
        report.success_probability = rr.success_probability;
        report.fidelity = rr.fidelity;
        report.fidelity_defined = rr.fidelity_defined;
        report.stage_probabilities = {rr.success_probability};
        report.outcome_table = rr.outcome_table;
        report.conditional_amplitudes = rr.conditional_amplitudes;
        if (rr.fidelity_defined)
            report.byproduct_weight = rr.success_probability * (1.0 - rr.fidelity);
    }

    report.certified = report.fidelity_defined && report.fidelity >= 1.0 - 1e-8 &&
                       report.byproduct_weight < 1e-10;
    return report;
}

std::string trace_csv(std::span<const TracePoint> trace) {
    std::string out = "restart,iteration,cost,infidelity,probability\n";
    char line[160];
    for (const TracePoint& t : trace) {
        std::snprintf(line, sizeof(line), "%d,%d,%.17g,%.17g,%.17g\n", t.restart, t.iteration,
                      t.cost, t.infidelity, t.probability);
        out += line;
    }
    return out;
}

}  // namespace bellforge
