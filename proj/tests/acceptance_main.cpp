// End-to-end acceptance suite. Each numbered check prints a single PASS, FAIL
// or SKIP line; the process exits non-zero if any check fails. The three
// optimization runs use the default hyperparameters with seed 42 and 20
// restarts and are shared across the checks that score them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bellforge/io.hpp"
#include "bellforge/optimize.hpp"
#include "bellforge/permanent.hpp"
#include "bellforge/simulate.hpp"
#include "reference_states.hpp"

namespace {

using namespace bellforge;

int g_failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
    std::printf("criterion %2d: %s  %s (%s)\n", id, ok ? "PASS" : "FAIL", what.c_str(),
                detail.c_str());
    if (!ok) ++g_failures;
}

void report_skip(int id, const std::string& what, const std::string& why) {
    std::printf("criterion %2d: SKIP  %s (%s)\n", id, what.c_str(), why.c_str());
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

struct SchemeRun {
    SchemeSpec scheme;
    OptimizationResult result;
    CertificationReport report;
};

SchemeRun run_scheme(const SchemeSpec& scheme) {
    OptimizerConfig config = OptimizerConfig::defaults_for(scheme.type);
    config.seed = 42;
    config.restarts = 20;
    SchemeRun run{scheme, multistart(scheme, config), {}};
    run.report = certify(run.result.circuits, scheme);
    return run;
}

Circuit random_mesh(int n_modes, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> theta(0.0, std::numbers::pi / 2);
    std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
    Circuit c = mesh_circuit(n_modes);
    for (Gate& g : c.gates) {
        g.theta = theta(rng);
        g.phi = phase(rng);
    }
    for (double& a : c.output_phases) a = phase(rng);
    c.output_phases.back() = 0;
    return c;
}

// --- checks 1-4: rediscover the three schemes and certify them ---

void check_six_mode(const SchemeRun& run) {
    const double p = run.report.success_probability;
    const double f = run.report.fidelity;
    const bool ok = run.result.converged && f >= 1.0 - 1e-8 &&
                    std::abs(p - 2.0 / 27) <= 1e-6;
    report(1, ok, "six-mode scheme rediscovered at p = 2/27",
           fmt("p=%.12g F=%.12g", p, f));
}

void check_five_mode(const SchemeRun& five, const SchemeRun& six) {
    const double p = five.report.success_probability;
    const double f = five.report.fidelity;
    const bool values_ok = five.result.converged && f >= 1.0 - 1e-8 &&
                           std::abs(p - 1.0 / 9) <= 1e-6;
    const bool size_ok = five.report.prune.nontrivial_bs == six.report.prune.nontrivial_bs;
    report(2, values_ok && size_ok,
           "five-mode scheme reaches p = 1/9 with the same beam-splitter count",
           fmt("p=%.12g F=%.12g", p, f) +
               fmt(" bs=%g vs %g", five.report.prune.nontrivial_bs,
                   six.report.prune.nontrivial_bs));
}

void check_two_stage(const SchemeRun& run) {
    const CertificationReport& rep = run.report;
    bool ok = run.result.converged && rep.fidelity >= 1.0 - 1e-8 &&
              rep.stage_probabilities.size() == 2;
    std::string detail = fmt("p=%.12g F=%.12g", rep.success_probability, rep.fidelity);
    if (rep.stage_probabilities.size() == 2) {
        const double p1 = rep.stage_probabilities[0];
        const double p2 = rep.stage_probabilities[1];
        ok = ok && std::abs(p1 - 5.0 / 18) <= 1e-6 && std::abs(p2 - 4.0 / 15) <= 1e-6 &&
             std::abs(rep.success_probability - 2.0 / 27) <= 1e-6;
        detail += fmt(" p1=%.12g p2=%.12g", p1, p2);
    }
    report(3, ok, "two-stage scheme reaches 5/18 * 4/15 = 2/27", detail);
}

void check_byproducts(const std::vector<const SchemeRun*>& runs) {
    bool ok = true;
    double worst = 0;
    for (const SchemeRun* run : runs) {
        worst = std::max(worst, run->report.byproduct_weight);
        ok = ok && run->report.byproduct_weight < 1e-10 && run->report.certified;
    }
    report(4, ok, "heralded states carry no byproduct components",
           fmt("max weight %.3g", worst));
}

// --- check 5: two-photon interference on a balanced splitter ---

void check_hom() {
    const FockState out = evolve(bs_matrix(std::numbers::pi / 4, 0.0),
                                 OccupationVector::parse("11"));
    const double coincidence = std::abs(out.amplitude(OccupationVector::parse("11")));
    const double bunch20 =
        std::abs(out.amplitude(OccupationVector::parse("20")) - cplx{1 / std::sqrt(2.0)});
    const double bunch02 = std::abs(std::abs(out.amplitude(OccupationVector::parse("02"))) -
                                    1 / std::sqrt(2.0));
    const bool ok = coincidence <= 1e-12 && bunch20 <= 1e-12 && bunch02 <= 1e-12;
    report(5, ok, "balanced splitter shows exact two-photon bunching",
           fmt("coincidence %.3g, bunching error %.3g", coincidence,
               std::max(bunch20, bunch02)));
}

// --- check 6: permanent kernel against the factorial-sum oracle ---

void check_permanent() {
    std::mt19937_64 rng(271828);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 7);
        ComplexMatrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = cplx{gauss(rng), gauss(rng)};
        const cplx fast = permanent_ryser(a);
        const cplx slow = permanent_naive(a);
        worst = std::max(worst, std::abs(fast - slow) / std::max(1.0, std::abs(slow)));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = worst <= 1e-10 && secs < 10.0;
    report(6, ok, "Ryser permanent matches the permutation-sum oracle",
           fmt("max rel err %.3g in %.2f s", worst, secs));
}

// --- check 7: random meshes conserve probability ---

void check_conservation() {
    std::mt19937_64 rng(314159);
    double worst_defect = 0, worst_norm = 0, worst_sum = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const Circuit mesh = random_mesh(n, rng);
        worst_defect = std::max(worst_defect, compose(mesh).unitarity_defect());
    }
    const SchemeSpec scheme = six_mode_scheme();
    for (int trial = 0; trial < 100; ++trial) {
        const Circuit mesh = random_mesh(6, rng);
        const FockState out = evolve(compose(mesh), scheme.input_occupation);
        worst_norm = std::max(worst_norm, std::abs(out.norm_sq() - 1.0));
        const HeraldResult h = herald(out, scheme);
        double total = 0;
        for (const HeraldedOutcome& o : h.table) total += o.probability;
        worst_sum = std::max(worst_sum, std::abs(total - 1.0));
    }
    const bool ok = worst_defect < 1e-12 && worst_norm <= 1e-10 && worst_sum <= 1e-10;
    report(7, ok, "random meshes stay unitary and conserve probability",
           fmt("defect %.3g, norm err %.3g, outcome-sum err %.3g", worst_defect, worst_norm,
               worst_sum));
}

// --- check 8: reference expansions are self-consistent ---

void check_reference_tables(const SchemeRun& staged) {
    namespace ref = bellforge::reference;
    bool ok = true;
    auto check_sum = [&](const std::vector<double>& w, double expect) {
        double s = 0;
        for (double v : w) s += v;
        ok = ok && std::abs(s - expect) <= 1e-12;
        return s;
    };
    check_sum(ref::six_mode_residual_weights(), 1.0);
    check_sum(ref::five_mode_residual_weights(), 1.0);
    check_sum(ref::intermediate_weights(), 1.0);
    check_sum(ref::stage2_output_weights(), 1.0);
    for (const auto& [name, state] : ref::component_states())
        ok = ok && std::abs(state.norm_sq() - 1.0) <= 1e-12;

    const HeraldResult six = herald(ref::six_mode_output(), six_mode_scheme());
    ok = ok && std::abs(six.designated.probability - 2.0 / 27) <= 1e-12 &&
         six.designated.fidelity_defined &&
         std::abs(six.designated.fidelity - 1.0) <= 1e-12;
    const HeraldResult five = herald(ref::five_mode_output(), five_mode_scheme());
    ok = ok && std::abs(five.designated.probability - 1.0 / 9) <= 1e-12 &&
         std::abs(five.designated.fidelity - 1.0) <= 1e-12;
    const HeraldResult stage1 = herald(ref::intermediate_state(), two_stage_scheme());
    ok = ok && std::abs(stage1.designated.probability - 5.0 / 18) <= 1e-12;

    // The published residual table for the staged second mesh is not
    // normalized; its squared coefficients sum to 17/11. Assert that, then
    // list the simulated stage-2 outcome distribution as the usable record.
    const double claimed = check_sum(ref::stage2_claimed_residual_weights(), 17.0 / 11);
    ok = ok && std::abs(claimed - 1.0) > 1e-3;

    report(8, ok, "reference state tables are self-consistent",
           fmt("claimed stage-2 residual weights sum to %.12g, expected 17/11", claimed));
    if (!staged.report.outcome_table.empty()) {
        std::printf("    simulated stage-2 outcome distribution:\n");
        for (const auto& [pattern, prob] : staged.report.outcome_table)
            std::printf("      aux %s : %.12g\n", pattern.to_digits().c_str(), prob);
    }
}

// --- check 9: first-order optimality at the polished optima ---

void check_optimality(const std::vector<const SchemeRun*>& runs) {
    bool ok = true;
    double worst = 0;
    for (const SchemeRun* run : runs) {
        const SchemeObjective obj(run->scheme);
        const std::vector<double> params = obj.parameters_of(run->result.circuits);
        const std::vector<double> grad = obj.gradient(params, 0.0, 0.0, 1e-6, true);
        double gmax = 0;
        for (double g : grad) gmax = std::max(gmax, std::abs(g));
        worst = std::max(worst, gmax);
        ok = ok && gmax < 1e-5;
    }
    report(9, ok, "fidelity gradient vanishes at the polished optima",
           fmt("max |g| %.3g", worst));
}

// --- check 10: shipped reference circuits reproduce the reference states ---

void check_reference_circuits() {
    namespace ref = bellforge::reference;
    const std::filesystem::path dir = BELLFORGE_FIXTURES_DIR;
    struct Case {
        const char* file;
        OccupationVector input;
        FockState target;
        // Reference tables fix amplitudes only up to a phase per occupation
        // pattern of these modes (empty: single global phase).
        std::vector<int> free_phase_modes;
    };
    // The five-mode reference expansion is provably not the output of any
    // lossless network, even granting a free phase per auxiliary detection
    // outcome (the unit tests pin the rank certificate), so no circuit for it
    // can exist and only the two reachable tables are checked here.
    const Case cases[] = {
        {"six_mode_reference_circuit.json", OccupationVector::parse("111100"),
         ref::six_mode_output(), {}},
        {"stage1_reference_circuit.json", OccupationVector::parse("11100"),
         ref::intermediate_state(), {4}},
    };

    bool ok = true;
    double worst = 0;
    int loaded = 0;
    for (const Case& c : cases) {
        const std::filesystem::path path = dir / c.file;
        if (!std::filesystem::exists(path)) continue;
        ++loaded;
        const Circuit circuit = load_circuit(path.string());
        const FockState out = evolve(compose(circuit), c.input);
        // Align the free phases on the per-sector overlaps with the reference.
        const auto& basis = out.basis();
        std::map<std::vector<int>, cplx> overlaps;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::vector<int> key;
            for (int m : c.free_phase_modes) key.push_back(basis.at(i)[m]);
            overlaps[key] += std::conj(c.target.amplitudes()[i]) * out.amplitudes()[i];
        }
        double max_err = 0;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::vector<int> key;
            for (int m : c.free_phase_modes) key.push_back(basis.at(i)[m]);
            const cplx ov = overlaps[key];
            const cplx phase = std::abs(ov) > 0 ? ov / std::abs(ov) : cplx{1.0};
            max_err = std::max(max_err, std::abs(out.amplitudes()[i] -
                                                 phase * c.target.amplitudes()[i]));
        }
        worst = std::max(worst, max_err);
        ok = ok && max_err <= 1e-6;
    }
    if (loaded == 0) {
        report_skip(10, "shipped circuits reproduce the reference amplitude tables",
                    "no fixture circuits found in " + dir.string());
        return;
    }
    report(10, ok && loaded == 2, "shipped circuits reproduce the reference amplitude tables",
           fmt("%g/2 circuits, max amplitude err %.3g", static_cast<double>(loaded), worst));
}

}  // namespace

int main() {
    std::printf("running acceptance checks\n");

    const SchemeRun six = run_scheme(six_mode_scheme());
    const SchemeRun five = run_scheme(five_mode_scheme());
    const SchemeRun staged = run_scheme(two_stage_scheme());
    const std::vector<const SchemeRun*> all{&six, &five, &staged};

    check_six_mode(six);
    check_five_mode(five, six);
    check_two_stage(staged);
    check_byproducts(all);
    check_hom();
    check_permanent();
    check_conservation();
    check_reference_tables(staged);
    check_optimality(all);
    check_reference_circuits();

    if (g_failures == 0) {
        std::printf("all acceptance checks passed\n");
        return 0;
    }
    std::printf("%d acceptance check(s) failed\n", g_failures);
    return 1;
}
