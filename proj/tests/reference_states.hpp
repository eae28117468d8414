#pragma once

// Reference output-state expansions for the known optimal circuits. These are
// the oracles the simulator and optimizer are checked against: full heralded
// output states for the six-mode and five-mode meshes, the three-photon
// intermediate state of the staged scheme, and the (deliberately inconsistent)
// claimed stage-2 residual table.

#include <string>
#include <utility>
#include <vector>

#include "bellforge/fock.hpp"

namespace bellforge::reference {

/// Full six-mode output: sqrt(2/27) |Phi>|11> + (5/sqrt(27)) |R6>.
FockState six_mode_output();
FockState six_mode_residual();  ///< |R6>, normalized

/// Full five-mode output: (1/3) |Phi>|2> + (2 sqrt(2)/3) |R52>.
FockState five_mode_output();
FockState five_mode_residual();  ///< |R52>, normalized

/// Stage-1 intermediate state |psi'> (5 modes, 3 photons).
FockState intermediate_state();
/// The |chi_1'> component heralded by one photon on a1 (4 modes, 2 photons).
FockState chi1_prime();

/// Named normalized component states entering the expansions above; each must
/// have unit norm.
std::vector<std::pair<std::string, FockState>> component_states();

/// Squared coefficients of each expansion, for normalization self-checks.
std::vector<double> six_mode_residual_weights();   // sums to 1
std::vector<double> five_mode_residual_weights();  // sums to 1
std::vector<double> intermediate_weights();        // sums to 1
std::vector<double> stage2_output_weights();       // sums to 1

/// The claimed stage-2 residual table does NOT normalize: its squared
/// coefficients sum to 17/11 although its component states are unit norm.
/// Kept verbatim so tests can assert the inconsistency; the certified
/// stage-2 outcome distribution is produced by simulation instead.
std::vector<double> stage2_claimed_residual_weights();  // sums to 17/11

}  // namespace bellforge::reference
