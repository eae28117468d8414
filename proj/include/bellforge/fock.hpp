#pragma once

#include <compare>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bellforge/matrix.hpp"

namespace bellforge {

/// Photon counts per mode. The basis label of a multi-photon Fock state.
struct OccupationVector {
    std::vector<int> counts;

    OccupationVector() = default;
    explicit OccupationVector(std::vector<int> c);
    OccupationVector(std::initializer_list<int> c) : OccupationVector(std::vector<int>(c)) {}

    /// Parse a digit-per-mode string, e.g. "1010" or "1111 0" (spaces ignored).
    static OccupationVector parse(const std::string& digits);

    int n_modes() const { return static_cast<int>(counts.size()); }
    int total() const;
    int operator[](int i) const { return counts[static_cast<std::size_t>(i)]; }

    bool operator==(const OccupationVector&) const = default;
    auto operator<=>(const OccupationVector&) const = default;

    /// Digit string form; valid while every count is <= 9 (always true here).
    std::string to_digits() const;
};

/// All occupation vectors with the given photon count, lexicographically
/// decreasing, so (M,0,...,0) comes first. Size is binomial(M+N-1, M).
std::vector<OccupationVector> enumerate_basis(int photons, int modes);

/// Enumerated basis with reverse index lookup.
class FockBasis {
public:
    FockBasis(int photons, int modes);

    int photons() const { return photons_; }
    int modes() const { return modes_; }
    std::size_t size() const { return states_.size(); }
    const OccupationVector& at(std::size_t i) const { return states_[i]; }
    const std::vector<OccupationVector>& states() const { return states_; }

    /// Index of the vector in canonical order, or -1 if it is not in the basis.
    int index_of(const OccupationVector& v) const;

private:
    int photons_;
    int modes_;
    std::vector<OccupationVector> states_;
    std::map<OccupationVector, int> index_;
};

/// Process-wide cache of immutable bases.
std::shared_ptr<const FockBasis> shared_basis(int photons, int modes);

/// Complex amplitude vector over a fixed (photons, modes) occupation basis.
class FockState {
public:
    /// Zero-photon vacuum on one mode; a placeholder for to-be-filled fields.
    FockState();
    FockState(std::shared_ptr<const FockBasis> basis, std::vector<cplx> amplitudes);

    static FockState zero(int photons, int modes);
    static FockState basis_state(const OccupationVector& occ);
    /// Build from an explicit component list; missing components are zero.
    static FockState from_components(
        int modes, const std::vector<std::pair<OccupationVector, cplx>>& components);

    const FockBasis& basis() const { return *basis_; }
    std::shared_ptr<const FockBasis> basis_ptr() const { return basis_; }
    int photons() const { return basis_->photons(); }
    int modes() const { return basis_->modes(); }
    std::span<const cplx> amplitudes() const { return amps_; }
    cplx amplitude(const OccupationVector& occ) const;

    double norm_sq() const;
    double norm() const;
    FockState normalized() const;
    FockState scaled(cplx factor) const;
    FockState operator+(const FockState& rhs) const;

private:
    std::shared_ptr<const FockBasis> basis_;
    std::vector<cplx> amps_;
};

/// <a|b>; requires identical (photons, modes).
cplx inner_product(const FockState& a, const FockState& b);

/// Concatenate mode registers: result lives on a's modes followed by b's.
FockState tensor(const FockState& a, const FockState& b);

/// Result of projecting the auxiliary modes onto a fixed photon pattern.
struct Projection {
    FockState unnormalized;  ///< |chi_d> = <d|psi>, on the remaining modes
    FockState normalized;    ///< |chi_d>/sqrt(p); zero state when empty
    double probability = 0;  ///< <chi_d|chi_d>
    bool empty = false;      ///< true when probability underflows to 0
};

Projection partial_project(const FockState& state, std::span<const int> aux_modes,
                           const OccupationVector& pattern);

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

BellKind bell_kind_from_name(const std::string& name);  // "phi+", "phi-", "psi+", "psi-"
std::string bell_kind_name(BellKind kind);

/// Dual-rail Bell state on 4 modes / 2 photons; PhiPlus = (|1010> + |0101>)/sqrt(2).
FockState bell_target(BellKind kind);

}  // namespace bellforge
