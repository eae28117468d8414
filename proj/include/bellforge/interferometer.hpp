#pragma once

#include <span>
#include <string>
#include <vector>

#include "bellforge/matrix.hpp"

namespace bellforge {

/// Variable beam-splitter on modes (mode, mode+1).
/// theta in [0, pi/2] sets the transmissivity tau = cos^2(theta);
/// phi in [-pi, pi) is the input phase difference.
struct Gate {
    int mode = 0;
    double theta = 0;
    double phi = 0;

    double tau() const;
    /// Both angles within tol of a multiple of pi/2, where sin(2x) = 0: the
    /// splitter is a plain crossover or pass-through and the phase is fixed.
    bool trivial(double tol) const;
};

/// Ordered beam-splitter mesh plus a diagonal output phase layer.
/// Gates apply first-to-last; the phase on the last mode is gauge-fixed to 0
/// when the circuit is produced from a packed parameter vector.
struct Circuit {
    int n_modes = 0;
    std::vector<Gate> gates;
    std::vector<double> output_phases;  // length n_modes
    std::string label;
};

/// Transfer matrix of a single beam-splitter:
/// [[e^{i phi} sin t, cos t], [e^{i phi} cos t, -sin t]].
ComplexMatrix bs_matrix(double theta, double phi);

/// Rectangular mesh layout: N layers alternating between even and odd
/// neighboring pairs, N(N-1)/2 gates total. Returned as the lower mode index
/// of each gate, in application order.
std::vector<int> clements_layout(int n_modes);

/// Full rectangular mesh with all angles zero and the given layout.
Circuit mesh_circuit(int n_modes);

/// Compose the circuit into its N x N transfer matrix (phase layer last).
ComplexMatrix compose(const Circuit& circuit);

/// Flat parameter vector [theta_1, phi_1, ..., theta_Q, phi_Q, alpha_1, ...,
/// alpha_{N-1}]; the last output phase is gauge-fixed to 0 and not packed.
std::vector<double> pack_parameters(const Circuit& circuit);
Circuit unpack_parameters(std::span<const double> params, int n_modes,
                          std::span<const int> layout);

struct PruneSummary {
    int nontrivial_bs = 0;           ///< gates with tau away from {0, 1}
    std::vector<double> taus;        ///< transmissivities of those gates
    int nontrivial_phase_shifts = 0; ///< gate phis plus output phases away from
                                     ///< a multiple of pi/2
};

/// Snap every angle (gate theta/phi and output alpha) that lies within tol of
/// a multiple of pi/2 to that exact value, and count the angles that do not.
Circuit prune_trivial(const Circuit& circuit, double tol, PruneSummary* summary = nullptr);

}  // namespace bellforge
