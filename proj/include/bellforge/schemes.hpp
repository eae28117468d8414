#pragma once

#include <array>
#include <string>
#include <vector>

#include "bellforge/fock.hpp"

namespace bellforge {

enum class SchemeType { SixMode, FiveMode, TwoStage };

SchemeType scheme_type_from_name(const std::string& name);  // "six-mode", ...
std::string scheme_type_name(SchemeType type);

/// Topology of one Bell-generation scheme: mesh width, input photons, mode
/// partition, herald pattern(s) and target state. For the two-stage scheme
/// the fields describe stage 1; stage 2 reuses the same mesh width, adds one
/// fresh photon on fresh_photon_mode and heralds stage2_herald there.
struct SchemeSpec {
    SchemeType type = SchemeType::SixMode;
    int n_modes = 6;
    OccupationVector input_occupation;
    std::array<int, 4> logical_modes{0, 1, 2, 3};
    std::vector<int> aux_modes;
    OccupationVector herald_pattern;
    BellKind target = BellKind::PhiPlus;

    // two-stage only
    int fresh_photon_mode = -1;
    OccupationVector stage2_herald;

    bool two_stage() const { return type == SchemeType::TwoStage; }
    int total_photons() const;
    FockState target_state() const { return bell_target(target); }

    /// Partition and photon-bookkeeping consistency; throws on violation.
    void validate() const;
};

SchemeSpec six_mode_scheme();
SchemeSpec five_mode_scheme();
SchemeSpec two_stage_scheme();

}  // namespace bellforge
