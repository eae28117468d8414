#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bellforge/interferometer.hpp"
#include "bellforge/lbfgs.hpp"
#include "bellforge/schemes.hpp"
#include "bellforge/simulate.hpp"

namespace bellforge {

struct OptimizerConfig {
    double mu = 1e-3;        ///< probability exponent in the cost
    double eps = 1e-5;       ///< sparsity penalty weight
    int restarts = 20;
    std::uint64_t seed = 0;
    int max_iterations = 5000;
    double grad_tol = 1e-9;
    double cost_tol = 1e-12;
    double fd_step = 1e-6;   ///< central-difference step, radians
    int threads = 0;         ///< restart parallelism; 0 = hardware default

    /// Per-scheme defaults: mu = 1e-3 / 1e-4 / 1e-2 for six-mode / five-mode /
    /// two-stage, eps = 1e-5 everywhere.
    static OptimizerConfig defaults_for(SchemeType type);
};

/// Cost, gradient and herald quantities over the flat mesh parameter vector
/// of a scheme (both meshes concatenated for the two-stage scheme).
class SchemeObjective {
public:
    explicit SchemeObjective(SchemeSpec scheme);

    const SchemeSpec& scheme() const { return scheme_; }
    int n_parameters() const;
    int params_per_mesh() const { return params_per_mesh_; }
    std::span<const int> layout() const { return layout_; }

    /// f = -p^mu F + eps * sum_j (sin^2 2theta_j + sin^2 2phi_j), with the
    /// first term evaluated as -|<chi_d|target>|^2 * max(p, 1e-12)^(mu-1).
    double cost(std::span<const double> params, double mu, double eps) const;

    /// -F alone; the polishing objective.
    double infidelity_cost(std::span<const double> params) const;

    struct Quantities {
        double probability = 0;  ///< p (product of stages for two-stage)
        double fidelity = 0;
        std::vector<double> stage_probabilities;  ///< {p} or {p1, p2}
    };
    Quantities herald_quantities(std::span<const double> params) const;

    /// Central finite differences of cost (or infidelity_cost when polish).
    std::vector<double> gradient(std::span<const double> params, double mu, double eps,
                                 double fd_step, bool polish = false) const;

    std::vector<Circuit> circuits_from(std::span<const double> params) const;
    std::vector<double> parameters_of(std::span<const Circuit> circuits) const;

    /// Seeded random start: theta ~ U[0, pi/2], phi and alpha ~ U[-pi, pi).
    std::vector<double> random_parameters(std::uint64_t seed, int restart) const;

private:
    std::vector<cplx> heralded_chi(std::span<const double> params, double* p1_out) const;
    double penalty(std::span<const double> params) const;

    SchemeSpec scheme_;
    std::vector<int> layout_;
    int params_per_mesh_;
    int n_meshes_;
    std::shared_ptr<const FockBasis> logical_basis_;       // (2, 4)
    std::shared_ptr<const FockBasis> intermediate_basis_;  // (2, 4), stage-1 conditional
    std::vector<cplx> target_amps_;
};

struct TracePoint {
    int restart = 0;
    int iteration = 0;
    double cost = 0;
    double infidelity = 0;
    double probability = 0;
};

struct OptimizationResult {
    std::vector<Circuit> circuits;  ///< best polished circuit(s)
    double cost = 0;                ///< penalty-phase cost of the best restart
    double probability = 0;         ///< recomputed by an independent simulate pass
    double fidelity = 0;
    std::vector<double> stage_probabilities;
    bool converged = false;         ///< some restart reached F > 0.99 and polish held
    int best_restart = -1;
    std::vector<TracePoint> trace;  ///< all restarts, in restart order
    PruneSummary prune;
};

/// Independent seeded restarts of the penalty-phase L-BFGS search, best-first
/// selection (fidelity, then probability, then fewer non-trivial gates), then
/// polish of the winner. Deterministic for a fixed seed and config.
OptimizationResult multistart(const SchemeSpec& scheme, const OptimizerConfig& config);

/// Re-optimize fidelity alone (eps = 0), then prune trivial gates. Returns the
/// input unchanged (ok = false) if 1 - F cannot be driven below 1e-10.
std::vector<Circuit> polish(std::vector<Circuit> circuits, const SchemeSpec& scheme, bool* ok);

struct CertificationReport {
    double success_probability = 0;
    double fidelity = 0;
    bool fidelity_defined = false;
    double byproduct_weight = 0;  ///< non-target weight under the herald pattern
    std::vector<double> stage_probabilities;
    std::vector<std::pair<OccupationVector, double>> outcome_table;
    std::vector<AmplitudeRow> conditional_amplitudes;
    std::vector<std::pair<OccupationVector, double>> stage1_outcome_table;  // two-stage
    PruneSummary prune;
    bool certified = false;  ///< F >= 1 - 1e-8 and byproduct_weight < 1e-10
};

/// Full simulate-based recomputation of p, F and the outcome table; never
/// trusts optimizer internals.
CertificationReport certify(std::span<const Circuit> circuits, const SchemeSpec& scheme);

std::string trace_csv(std::span<const TracePoint> trace);

}  // namespace bellforge
