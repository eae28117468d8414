#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellforge/io.hpp"
#include "bellforge/optimize.hpp"
#include "bellforge/permanent.hpp"
#include "bellforge/simulate.hpp"

namespace {

using namespace bellforge;

int env_threads() {
    const char* v = std::getenv("BELLFORGE_THREADS");
    if (!v || !*v) return 0;
    return std::max(0, std::atoi(v));
}

void print_value(const char* name, double value) {
    std::printf("%s = %.17g\n", name, value);
}

int cmd_verify(const std::vector<std::string>& circuit_paths, const std::string& scheme_arg,
               const std::string& report_path) {
    const SchemeSpec scheme = load_scheme(scheme_arg);
    std::vector<Circuit> circuits;
    for (const std::string& p : circuit_paths) circuits.push_back(load_circuit(p));

    const CertificationReport report = certify(circuits, scheme);
    if (!report_path.empty()) save_report(report, report_path);

    print_value("success_probability", report.success_probability);
    print_value("fidelity", report.fidelity);
    print_value("byproduct_weight", report.byproduct_weight);
    if (report.stage_probabilities.size() > 1) {
        print_value("stage1_probability", report.stage_probabilities[0]);
        print_value("stage2_probability", report.stage_probabilities[1]);
    }
    std::printf("nontrivial_beam_splitters = %d\n", report.prune.nontrivial_bs);
    std::printf("certified = %s\n", report.certified ? "true" : "false");
    return report.certified ? 0 : 1;
}

int cmd_optimize(const std::string& scheme_arg, double mu, bool mu_set, double eps, bool eps_set,
                 int restarts, std::uint64_t seed, std::vector<std::string> out_paths,
                 const std::string& trace_path) {
    const SchemeSpec scheme = load_scheme(scheme_arg);
    OptimizerConfig config = OptimizerConfig::defaults_for(scheme.type);
    if (mu_set) config.mu = mu;
    if (eps_set) config.eps = eps;
    config.restarts = restarts;
    config.seed = seed;
    config.threads = env_threads();

    const OptimizationResult result = multistart(scheme, config);

    const std::size_t n_circuits = result.circuits.size();
    if (out_paths.size() == 1 && n_circuits == 2) {
        // Derive the stage-2 path from the single one given.
        const std::string& base = out_paths[0];
        const std::size_t dot = base.rfind('.');
        out_paths.push_back(dot == std::string::npos ? base + ".stage2"
                                                     : base.substr(0, dot) + ".stage2" +
                                                           base.substr(dot));
    }
    for (std::size_t i = 0; i < out_paths.size() && i < n_circuits; ++i)
        save_circuit(result.circuits[i], out_paths[i]);
    if (!trace_path.empty()) {
        std::ofstream f(trace_path);
        if (!f) throw std::runtime_error("cannot open for writing: " + trace_path);
        f << trace_csv(result.trace);
    }

    print_value("success_probability", result.probability);
    print_value("fidelity", result.fidelity);
    if (result.stage_probabilities.size() > 1) {
        print_value("stage1_probability", result.stage_probabilities[0]);
        print_value("stage2_probability", result.stage_probabilities[1]);
    }
    std::printf("nontrivial_beam_splitters = %d\n", result.prune.nontrivial_bs);
    std::printf("best_restart = %d\n", result.best_restart);
    std::printf("converged = %s\n", result.converged ? "true" : "false");
    return result.converged ? 0 : 1;
}

int cmd_evolve(const std::string& circuit_path, const std::string& input_str,
               const std::string& report_path, const std::string& aux_str) {
    const Circuit circuit = load_circuit(circuit_path);
    const OccupationVector input = OccupationVector::parse(input_str);
    if (input.n_modes() != circuit.n_modes)
        throw std::runtime_error("evolve: input occupation length != circuit mode count");

    const FockState output = evolve(compose(circuit), input);

    std::vector<int> aux_modes;
    if (!aux_str.empty()) {
        std::stringstream ss(aux_str);
        std::string tok;
        while (std::getline(ss, tok, ',')) aux_modes.push_back(std::stoi(tok));
    }

    nlohmann::json amplitudes = nlohmann::json::array();
    const auto& basis = output.basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const cplx a = output.amplitudes()[i];
        if (std::abs(a) < 1e-15) continue;
        amplitudes.push_back({{"occupation", basis.at(i).to_digits()},
                              {"re", a.real()},
                              {"im", a.imag()}});
    }

    std::map<OccupationVector, double> outcomes;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const double w = std::norm(output.amplitudes()[i]);
        if (w == 0) continue;
        if (aux_modes.empty()) {
            outcomes[basis.at(i)] += w;
        } else {
            std::vector<int> aux;
            for (int m : aux_modes) aux.push_back(basis.at(i)[m]);
            outcomes[OccupationVector(std::move(aux))] += w;
        }
    }
    nlohmann::json table = nlohmann::json::array();
    for (const auto& [pattern, prob] : outcomes)
        table.push_back({{"pattern", pattern.to_digits()}, {"probability", prob}});

    const nlohmann::json j = {{"norm", output.norm()},
                              {"conditional_amplitudes", amplitudes},
                              {"outcome_table", table}};
    if (!report_path.empty()) {
        std::ofstream f(report_path);
        if (!f) throw std::runtime_error("cannot open for writing: " + report_path);
        f << j.dump(2) << "\n";
    } else {
        std::printf("%s\n", j.dump(2).c_str());
    }
    return 0;
}

int cmd_bench_permanent(const std::string& sizes, int reps) {
    int lo = 0, hi = 0;
    if (std::sscanf(sizes.c_str(), "%d..%d", &lo, &hi) != 2 &&
        std::sscanf(sizes.c_str(), "%d-%d", &lo, &hi) != 2) {
        if (std::sscanf(sizes.c_str(), "%d", &lo) == 1)
            hi = lo;
        else
            throw std::runtime_error("bad --sizes range: " + sizes);
    }
    if (lo < 1 || hi > 14 || hi < lo) throw std::runtime_error("sizes must lie in 1..14");

    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::printf("%4s %12s %12s %10s\n", "n", "mean_us", "stddev_us", "checked");
    for (int n = lo; n <= hi; ++n) {
        std::vector<double> times;
        bool checked = false;
        for (int r = 0; r < reps; ++r) {
            ComplexMatrix a(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) a(i, j) = cplx{gauss(rng), gauss(rng)};
            const auto t0 = std::chrono::steady_clock::now();
            const cplx p = permanent_ryser(a);
            const auto t1 = std::chrono::steady_clock::now();
            times.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
            if (n <= 7) {
                const cplx q = permanent_naive(a);
                if (std::abs(p - q) > 1e-10 * std::max(1.0, std::abs(q)))
                    throw std::runtime_error("permanent cross-check failed at n=" +
                                             std::to_string(n));
                checked = true;
            }
        }
        double mean = 0;
        for (double t : times) mean += t;
        mean /= static_cast<double>(times.size());
        double var = 0;
        for (double t : times) var += (t - mean) * (t - mean);
        var /= static_cast<double>(times.size());
        std::printf("%4d %12.3f %12.3f %10s\n", n, mean, std::sqrt(var),
                    checked ? "ok" : "-");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heralded linear-optical Bell state generation: simulate, optimize, certify"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "Certify circuit(s) against a scheme");
    std::vector<std::string> circuit_paths;
    std::string scheme_arg, report_path;
    verify->add_option("--circuit", circuit_paths, "Circuit JSON file(s), 1 or 2")
        ->required()
        ->expected(1, 2);
    verify->add_option("--scheme", scheme_arg, "Scheme type name or config JSON path")
        ->required();
    verify->add_option("--report", report_path, "Write the certification report here");

    // optimize
    auto* optimize = app.add_subcommand("optimize", "Multistart mesh optimization");
    std::string opt_scheme, trace_path;
    std::vector<std::string> out_paths;
    double mu = 0, eps = 0;
    int restarts = 20;
    std::uint64_t seed = 42;
    optimize->add_option("--scheme", opt_scheme, "Scheme type name or config JSON path")
        ->required();
    auto* mu_opt = optimize->add_option("--mu", mu, "Probability exponent");
    auto* eps_opt = optimize->add_option("--eps", eps, "Sparsity penalty weight");
    optimize->add_option("--restarts", restarts, "Independent restarts")
        ->check(CLI::PositiveNumber);
    optimize->add_option("--seed", seed, "RNG seed");
    optimize->add_option("--out", out_paths, "Output circuit path(s)")->expected(1, 2);
    optimize->add_option("--trace", trace_path, "Per-iteration CSV trace");

    // evolve
    auto* evolve_cmd = app.add_subcommand("evolve", "Evolve an occupation input through a circuit");
    std::string evolve_circuit, evolve_input, evolve_report, evolve_aux;
    evolve_cmd->add_option("--circuit", evolve_circuit, "Circuit JSON file")->required();
    evolve_cmd->add_option("--input", evolve_input, "Digit-per-mode occupation, e.g. '1111 00'")
        ->required();
    evolve_cmd->add_option("--report", evolve_report, "Write the report here (stdout if unset)");
    evolve_cmd->add_option("--aux", evolve_aux, "Comma-separated aux mode indices for outcomes");

    // bench-permanent
    auto* bench = app.add_subcommand("bench-permanent", "Time the permanent kernel");
    std::string sizes = "2..10";
    int reps = 5;
    bench->add_option("--sizes", sizes, "Size range, e.g. 2..12");
    bench->add_option("--reps", reps, "Repetitions per size")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) return cmd_verify(circuit_paths, scheme_arg, report_path);
        if (*optimize)
            return cmd_optimize(opt_scheme, mu, mu_opt->count() > 0, eps, eps_opt->count() > 0,
                                restarts, seed, out_paths, trace_path);
        if (*evolve_cmd) return cmd_evolve(evolve_circuit, evolve_input, evolve_report, evolve_aux);
        if (*bench) return cmd_bench_permanent(sizes, reps);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
