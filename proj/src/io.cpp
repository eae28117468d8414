#include "bellforge/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bellforge {

using nlohmann::json;

namespace {

void save_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << text;
}

std::string load_text(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

json parse_file(const std::string& path) {
    return json::parse(load_text(path));
}

}  // namespace

json circuit_to_json(const Circuit& circuit) {
    json gates = json::array();
    for (const Gate& g : circuit.gates)
        gates.push_back({{"modes", {g.mode, g.mode + 1}}, {"theta", g.theta}, {"phi", g.phi}});
    json j = {{"n_modes", circuit.n_modes},
              {"gates", gates},
              {"output_phases", circuit.output_phases}};
    if (!circuit.label.empty()) j["label"] = circuit.label;
    return j;
}

Circuit circuit_from_json(const json& j) {
    Circuit c;
    c.n_modes = j.at("n_modes").get<int>();
    for (const json& gj : j.at("gates")) {
        const auto modes = gj.at("modes").get<std::vector<int>>();
        if (modes.size() != 2 || modes[1] != modes[0] + 1)
            throw std::runtime_error("circuit file: gate modes must be an adjacent pair");
        c.gates.push_back(
            Gate{modes[0], gj.at("theta").get<double>(), gj.at("phi").get<double>()});
    }
    c.output_phases = j.at("output_phases").get<std::vector<double>>();
    if (c.output_phases.size() != static_cast<std::size_t>(c.n_modes))
        throw std::runtime_error("circuit file: output_phases length != n_modes");
    if (j.contains("label")) c.label = j.at("label").get<std::string>();
    return c;
}

void save_circuit(const Circuit& circuit, const std::string& path) {
    save_text(path, circuit_to_json(circuit).dump(2) + "\n");
}

Circuit load_circuit(const std::string& path) {
    return circuit_from_json(parse_file(path));
}

SchemeSpec scheme_from_json(const json& j) {
    SchemeSpec s;
    const SchemeType type = scheme_type_from_name(j.at("type").get<std::string>());
    switch (type) {
        case SchemeType::SixMode: s = six_mode_scheme(); break;
        case SchemeType::FiveMode: s = five_mode_scheme(); break;
        case SchemeType::TwoStage: s = two_stage_scheme(); break;
    }
    if (j.contains("input_occupation"))
        s.input_occupation = OccupationVector::parse(j.at("input_occupation").get<std::string>());
    if (j.contains("target"))
        s.target = bell_kind_from_name(j.at("target").get<std::string>());
    s.validate();
    return s;
}

SchemeSpec load_scheme(const std::string& name_or_path) {
    if (name_or_path == "six-mode") return six_mode_scheme();
    if (name_or_path == "five-mode") return five_mode_scheme();
    if (name_or_path == "two-stage") return two_stage_scheme();
    return scheme_from_json(parse_file(name_or_path));
}

namespace {

json outcome_rows(const std::vector<std::pair<OccupationVector, double>>& table) {
    json rows = json::array();
    for (const auto& [pattern, prob] : table)
        rows.push_back({{"pattern", pattern.to_digits()}, {"probability", prob}});
    return rows;
}

json amplitude_rows(const std::vector<AmplitudeRow>& rows) {
    json out = json::array();
    for (const AmplitudeRow& r : rows)
        out.push_back({{"occupation", r.occupation.to_digits()},
                       {"re", r.amplitude.real()},
                       {"im", r.amplitude.imag()}});
    return out;
}

}  // namespace

json report_to_json(const CertificationReport& report) {
    json j = {{"success_probability", report.success_probability},
              {"fidelity", report.fidelity},
              {"fidelity_defined", report.fidelity_defined},
              {"byproduct_weight", report.byproduct_weight},
              {"certified", report.certified},
              {"outcome_table", outcome_rows(report.outcome_table)},
              {"conditional_amplitudes", amplitude_rows(report.conditional_amplitudes)},
              {"nontrivial_beam_splitters", report.prune.nontrivial_bs},
              {"nontrivial_phase_shifts", report.prune.nontrivial_phase_shifts},
              {"transmissivities", report.prune.taus}};
    if (report.stage_probabilities.size() > 1) {
        j["stage_probabilities"] = report.stage_probabilities;
        j["stage1_outcome_table"] = outcome_rows(report.stage1_outcome_table);
    }
    return j;
}

void save_report(const CertificationReport& report, const std::string& path) {
    save_text(path, report_to_json(report).dump(2) + "\n");
}

json residual_report_to_json(const ResidualReport& report) {
    std::vector<AmplitudeRow> rows = report.conditional_amplitudes;
    return {{"success_probability", report.success_probability},
            {"fidelity", report.fidelity},
            {"fidelity_defined", report.fidelity_defined},
            {"outcome_table", outcome_rows(report.outcome_table)},
            {"conditional_amplitudes", amplitude_rows(rows)}};
}

std::string state_to_fixture(const FockState& state) {
    std::string out;
    char line[128];
    const auto& basis = state.basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const cplx a = state.amplitudes()[i];
        if (a == cplx{}) continue;
        std::snprintf(line, sizeof(line), "%s\t%.17g\t%.17g\n", basis.at(i).to_digits().c_str(),
                      a.real(), a.imag());
        out += line;
    }
    return out;
}

FockState state_from_fixture(const std::string& text, int modes) {
    std::istringstream ss(text);
    std::string occ;
    double re = 0, im = 0;
    std::vector<std::pair<OccupationVector, cplx>> components;
    while (ss >> occ >> re >> im)
        components.emplace_back(OccupationVector::parse(occ), cplx{re, im});
    if (components.empty()) throw std::runtime_error("state fixture: no components");
    return FockState::from_components(modes, components);
}

}  // namespace bellforge
