#include "bellforge/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace bellforge {

namespace {

constexpr double kUnitarityTol = 1e-8;

/// Scatter pattern onto aux positions and logical counts onto the rest.
OccupationVector merge_modes(int n_modes, std::span<const int> aux_modes,
                             const OccupationVector& pattern,
                             const OccupationVector& logical) {
    std::vector<int> counts(static_cast<std::size_t>(n_modes), -1);
    for (std::size_t a = 0; a < aux_modes.size(); ++a)
        counts[static_cast<std::size_t>(aux_modes[a])] = pattern[static_cast<int>(a)];
    int li = 0;
    for (int m = 0; m < n_modes; ++m)
        if (counts[static_cast<std::size_t>(m)] < 0) counts[static_cast<std::size_t>(m)] = logical[li++];
    return OccupationVector(std::move(counts));
}

void check_unitary(const ComplexMatrix& u) {
    if (!u.square()) throw std::invalid_argument("evolve: transfer matrix must be square");
    if (u.unitarity_defect() > kUnitarityTol)
        throw std::invalid_argument("evolve: transfer matrix is not unitary");
}

}  // namespace

FockState evolve(const ComplexMatrix& u, const OccupationVector& input) {
    check_unitary(u);
    if (input.n_modes() != u.cols())
        throw std::invalid_argument("evolve: input mode count != matrix dimension");
    auto basis = shared_basis(input.total(), input.n_modes());
    std::vector<cplx> amps(basis->size());
    for (std::size_t t = 0; t < basis->size(); ++t)
        amps[t] = transition_amplitude(u, input, basis->at(t));
    return FockState(basis, std::move(amps));
}

FockState evolve_state(const ComplexMatrix& u, const FockState& input) {
    check_unitary(u);
    if (input.modes() != u.cols())
        throw std::invalid_argument("evolve_state: input mode count != matrix dimension");
    const auto& basis = input.basis();
    std::vector<cplx> amps(basis.size());
    for (std::size_t s = 0; s < basis.size(); ++s) {
        const cplx a = input.amplitudes()[s];
        if (a == cplx{}) continue;
        for (std::size_t t = 0; t < basis.size(); ++t)
            amps[t] += a * transition_amplitude(u, basis.at(s), basis.at(t));
    }
    return FockState(input.basis_ptr(), std::move(amps));
}

HeraldResult herald(const FockState& output, const SchemeSpec& scheme) {
    if (output.modes() != scheme.n_modes)
        throw std::invalid_argument("herald: state mode count != scheme mode count");

    const FockState target = scheme.target_state();

    // Group output probability by observed aux pattern.
    std::map<OccupationVector, double> outcome_prob;
    const auto& basis = output.basis();
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const double w = std::norm(output.amplitudes()[k]);
        if (w == 0) continue;
        std::vector<int> aux;
        aux.reserve(scheme.aux_modes.size());
        for (int m : scheme.aux_modes) aux.push_back(basis.at(k)[m]);
        outcome_prob[OccupationVector(std::move(aux))] += w;
    }

    auto make_outcome = [&](const OccupationVector& pattern) {
        Projection proj = partial_project(output, scheme.aux_modes, pattern);
        HeraldedOutcome o{pattern, proj.probability, proj.normalized, 0.0, false};
        if (!proj.empty && proj.unnormalized.photons() == target.photons() &&
            proj.unnormalized.modes() == target.modes()) {
            const cplx overlap = inner_product(proj.unnormalized, target);
            o.fidelity = std::norm(overlap) / proj.probability;
            o.fidelity_defined = true;
        }
        return std::pair{std::move(o), std::move(proj)};
    };

    HeraldResult result;
    auto [designated, proj] = make_outcome(scheme.herald_pattern);
    result.designated = std::move(designated);
    result.chi_unnormalized = std::move(proj.unnormalized);
    for (const auto& [pattern, prob] : outcome_prob) {
        if (pattern == scheme.herald_pattern) {
            result.table.push_back(result.designated);
        } else {
            auto [o, p] = make_outcome(pattern);
            result.table.push_back(std::move(o));
        }
    }
    return result;
}

TwoStageResult run_two_stage(const Circuit& v1, const Circuit& v2, const SchemeSpec& scheme) {
    if (!scheme.two_stage()) throw std::invalid_argument("run_two_stage: scheme is single-stage");
    scheme.validate();

    TwoStageResult r{0, 0, 0, FockState::zero(2, 4), FockState::zero(2, 4), 0, false, {}, {}};

    const FockState psi1 = evolve(compose(v1), scheme.input_occupation);
    const HeraldResult h1 = herald(psi1, scheme);
    r.stage1_table = h1.table;
    r.p1 = h1.designated.probability;
    if (h1.designated.probability == 0) return r;
    r.intermediate = h1.designated.conditional;

    // Fresh photon on a2, then the second mesh over the same five modes.
    const FockState fresh = FockState::basis_state(OccupationVector{1});
    const FockState stage2_in = tensor(r.intermediate, fresh);
    const FockState psi2 = evolve_state(compose(v2), stage2_in);

    SchemeSpec stage2 = scheme;
    stage2.herald_pattern = scheme.stage2_herald;
    stage2.aux_modes = {scheme.fresh_photon_mode};
    const HeraldResult h2 = herald(psi2, stage2);
    r.stage2_table = h2.table;
    r.p2 = h2.designated.probability;
    r.overall = r.p1 * r.p2;
    if (r.p2 > 0) {
        r.final_state = h2.designated.conditional;
        r.fidelity = h2.designated.fidelity;
        r.fidelity_defined = h2.designated.fidelity_defined;
    }
    return r;
}

ResidualReport residual_report(const FockState& output, const SchemeSpec& scheme) {
    const HeraldResult h = herald(output, scheme);
    ResidualReport report;
    report.success_probability = h.designated.probability;
    report.fidelity = h.designated.fidelity;
    report.fidelity_defined = h.designated.fidelity_defined;
    for (const HeraldedOutcome& o : h.table)
        report.outcome_table.emplace_back(o.aux_pattern, o.probability);
    const FockState& cond =
        h.designated.probability > 0 ? h.designated.conditional : h.chi_unnormalized;
    const auto& cond_basis = cond.basis();
    for (std::size_t i = 0; i < cond_basis.size(); ++i) {
        const cplx a = cond.amplitudes()[i];
        if (std::abs(a) > 1e-14)
            report.conditional_amplitudes.push_back({cond_basis.at(i), a});
    }
    return report;
}

std::vector<cplx> heralded_block(const ComplexMatrix& u, const OccupationVector& input,
                                 std::span<const int> aux_modes,
                                 const OccupationVector& pattern,
                                 const FockBasis& logical_basis) {
    std::vector<cplx> chi(logical_basis.size());
    for (std::size_t t = 0; t < logical_basis.size(); ++t) {
        const OccupationVector full =
            merge_modes(u.rows(), aux_modes, pattern, logical_basis.at(t));
        chi[t] = transition_amplitude(u, input, full);
    }
    return chi;
}

std::vector<cplx> heralded_block_state(const ComplexMatrix& u, const FockBasis& in_basis,
                                       std::span<const cplx> in_amplitudes,
                                       const OccupationVector& in_aux,
                                       std::span<const int> aux_modes,
                                       const OccupationVector& pattern,
                                       const FockBasis& logical_basis) {
    std::vector<cplx> chi(logical_basis.size());
    for (std::size_t s = 0; s < in_basis.size(); ++s) {
        const cplx a = in_amplitudes[s];
        if (a == cplx{}) continue;
        const OccupationVector in_full = merge_modes(u.cols(), aux_modes, in_aux, in_basis.at(s));
        for (std::size_t t = 0; t < logical_basis.size(); ++t) {
            const OccupationVector out_full =
                merge_modes(u.rows(), aux_modes, pattern, logical_basis.at(t));
            chi[t] += a * transition_amplitude(u, in_full, out_full);
        }
    }
    return chi;
}

}  // namespace bellforge
