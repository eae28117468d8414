#include "bellforge/interferometer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bellforge {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Nearest multiple of pi/2; sin(2x) vanishes exactly there.
double snap_half_pi(double v) { return std::round(v / kHalfPi) * kHalfPi; }
double half_pi_dist(double v) { return std::abs(v - snap_half_pi(v)); }

}  // namespace

double Gate::tau() const {
    const double c = std::cos(theta);
    return c * c;
}

bool Gate::trivial(double tol) const {
    return half_pi_dist(theta) < tol && half_pi_dist(phi) < tol;
}

ComplexMatrix bs_matrix(double theta, double phi) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const cplx e = std::polar(1.0, phi);
    ComplexMatrix t(2, 2);
    t(0, 0) = e * s;
    t(0, 1) = c;
    t(1, 0) = e * c;
    t(1, 1) = -s;
    return t;
}

std::vector<int> clements_layout(int n_modes) {
    if (n_modes < 2) throw std::invalid_argument("clements_layout: need at least 2 modes");
    std::vector<int> layout;
    for (int layer = 0; layer < n_modes; ++layer) {
        for (int m = layer % 2; m + 1 < n_modes; m += 2) layout.push_back(m);
    }
    return layout;
}

Circuit mesh_circuit(int n_modes) {
    Circuit c;
    c.n_modes = n_modes;
    for (int m : clements_layout(n_modes)) c.gates.push_back(Gate{m, 0.0, 0.0});
    c.output_phases.assign(static_cast<std::size_t>(n_modes), 0.0);
    return c;
}

ComplexMatrix compose(const Circuit& circuit) {
    const int n = circuit.n_modes;
    if (n < 1) throw std::invalid_argument("compose: circuit has no modes");
    if (circuit.output_phases.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("compose: output phase count != mode count");

    ComplexMatrix u = ComplexMatrix::identity(n);
    for (const Gate& g : circuit.gates) {
        if (g.mode < 0 || g.mode + 1 >= n)
            throw std::invalid_argument("compose: gate mode pair out of range");
        const ComplexMatrix t = bs_matrix(g.theta, g.phi);
        // U <- T_embedded * U : update rows (m, m+1) in place.
        for (int col = 0; col < n; ++col) {
            const cplx a = u(g.mode, col);
            const cplx b = u(g.mode + 1, col);
            u(g.mode, col) = t(0, 0) * a + t(0, 1) * b;
            u(g.mode + 1, col) = t(1, 0) * a + t(1, 1) * b;
        }
    }
    for (int i = 0; i < n; ++i) {
        const cplx d = std::polar(1.0, circuit.output_phases[static_cast<std::size_t>(i)]);
        for (int col = 0; col < n; ++col) u(i, col) *= d;
    }
    return u;
}

std::vector<double> pack_parameters(const Circuit& circuit) {
    std::vector<double> p;
    p.reserve(2 * circuit.gates.size() + static_cast<std::size_t>(circuit.n_modes) - 1);
    for (const Gate& g : circuit.gates) {
        p.push_back(g.theta);
        p.push_back(g.phi);
    }
    for (int i = 0; i + 1 < circuit.n_modes; ++i)
        p.push_back(circuit.output_phases[static_cast<std::size_t>(i)]);
    return p;
}

Circuit unpack_parameters(std::span<const double> params, int n_modes,
                          std::span<const int> layout) {
    const std::size_t expected = 2 * layout.size() + static_cast<std::size_t>(n_modes) - 1;
    if (params.size() != expected)
        throw std::invalid_argument("unpack_parameters: parameter vector length mismatch");
    Circuit c;
    c.n_modes = n_modes;
    c.gates.reserve(layout.size());
    for (std::size_t q = 0; q < layout.size(); ++q)
        c.gates.push_back(Gate{layout[q], params[2 * q], params[2 * q + 1]});
    c.output_phases.assign(static_cast<std::size_t>(n_modes), 0.0);
    for (int i = 0; i + 1 < n_modes; ++i)
        c.output_phases[static_cast<std::size_t>(i)] = params[2 * layout.size() +
                                                             static_cast<std::size_t>(i)];
    return c;
}

Circuit prune_trivial(const Circuit& circuit, double tol, PruneSummary* summary) {
    if (tol <= 0) throw std::invalid_argument("prune_trivial: tol must be positive");
    Circuit out = circuit;
    PruneSummary s;
    for (Gate& g : out.gates) {
        if (half_pi_dist(g.theta) < tol) {
            g.theta = snap_half_pi(g.theta);
        } else {
            s.nontrivial_bs += 1;
            s.taus.push_back(g.tau());
        }
        if (half_pi_dist(g.phi) < tol)
            g.phi = snap_half_pi(g.phi);
        else
            s.nontrivial_phase_shifts += 1;
    }
    for (double& alpha : out.output_phases) {
        if (half_pi_dist(alpha) < tol)
            alpha = snap_half_pi(alpha);
        else
            s.nontrivial_phase_shifts += 1;
    }
    if (summary) *summary = s;
    return out;
}

}  // namespace bellforge
