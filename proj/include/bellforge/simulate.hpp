#pragma once

#include <optional>
#include <vector>

#include "bellforge/fock.hpp"
#include "bellforge/interferometer.hpp"
#include "bellforge/matrix.hpp"
#include "bellforge/permanent.hpp"
#include "bellforge/schemes.hpp"

namespace bellforge {

/// Output state of a lossless interferometer for a single-basis-state input.
/// Rejects matrices with unitarity defect above 1e-8.
FockState evolve(const ComplexMatrix& u, const OccupationVector& input);

/// Linear extension of evolve to superposition inputs.
FockState evolve_state(const ComplexMatrix& u, const FockState& input);

struct HeraldedOutcome {
    OccupationVector aux_pattern;
    double probability = 0;
    FockState conditional;          ///< normalized; zero state when probability is 0
    double fidelity = 0;            ///< meaningless unless fidelity_defined
    bool fidelity_defined = false;  ///< false when probability is 0
};

struct HeraldResult {
    HeraldedOutcome designated;                  ///< the scheme's herald pattern d
    FockState chi_unnormalized;                  ///< <d|psi> on the logical modes
    std::vector<HeraldedOutcome> table;          ///< every aux outcome with support
};

/// Split a full output state by auxiliary detection pattern and score the
/// designated pattern against the scheme target.
HeraldResult herald(const FockState& output, const SchemeSpec& scheme);

struct TwoStageResult {
    double p1 = 0;        ///< stage-1 herald probability
    double p2 = 0;        ///< stage-2 herald probability given stage-1 success
    double overall = 0;   ///< p1 * p2
    FockState intermediate;  ///< normalized stage-1 conditional (4 modes, 2 photons)
    FockState final_state;   ///< normalized final conditional (4 modes, 2 photons)
    double fidelity = 0;
    bool fidelity_defined = false;
    std::vector<HeraldedOutcome> stage1_table;
    std::vector<HeraldedOutcome> stage2_table;
};

/// Evolve the staged scheme: mesh 1 on the three-photon input, herald one
/// photon on a1, insert a fresh photon on a2, mesh 2, herald one photon on a2.
TwoStageResult run_two_stage(const Circuit& v1, const Circuit& v2, const SchemeSpec& scheme);

struct AmplitudeRow {
    OccupationVector occupation;
    cplx amplitude;
};

struct ResidualReport {
    double success_probability = 0;
    double fidelity = 0;
    bool fidelity_defined = false;
    std::vector<std::pair<OccupationVector, double>> outcome_table;
    std::vector<AmplitudeRow> conditional_amplitudes;  ///< designated-pattern state
};

/// Per-outcome probabilities and the heralded conditional amplitude listing.
ResidualReport residual_report(const FockState& output, const SchemeSpec& scheme);

/// Unnormalized heralded amplitudes <t_s (+) d | U | s>, computed directly on
/// the logical basis without enumerating the full output space. Fast path for
/// the optimizer; certify recomputes the same quantities via evolve + herald.
std::vector<cplx> heralded_block(const ComplexMatrix& u, const OccupationVector& input,
                                 std::span<const int> aux_modes,
                                 const OccupationVector& pattern,
                                 const FockBasis& logical_basis);

/// Same, for a superposition input given as amplitudes over in_basis occupations
/// on the logical modes with the fixed aux occupation appended.
std::vector<cplx> heralded_block_state(const ComplexMatrix& u, const FockBasis& in_basis,
                                       std::span<const cplx> in_amplitudes,
                                       const OccupationVector& in_aux,
                                       std::span<const int> aux_modes,
                                       const OccupationVector& pattern,
                                       const FockBasis& logical_basis);

}  // namespace bellforge
