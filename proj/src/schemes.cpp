#include "bellforge/schemes.hpp"

#include <algorithm>
#include <stdexcept>

namespace bellforge {

SchemeType scheme_type_from_name(const std::string& name) {
    if (name == "six-mode") return SchemeType::SixMode;
    if (name == "five-mode") return SchemeType::FiveMode;
    if (name == "two-stage") return SchemeType::TwoStage;
    throw std::invalid_argument("unknown scheme type: " + name);
}

std::string scheme_type_name(SchemeType type) {
    switch (type) {
        case SchemeType::SixMode: return "six-mode";
        case SchemeType::FiveMode: return "five-mode";
        case SchemeType::TwoStage: return "two-stage";
    }
    throw std::logic_error("bad SchemeType");
}

int SchemeSpec::total_photons() const {
    int total = input_occupation.total();
    if (two_stage()) total += 1;  // fresh photon inserted before stage 2
    return total;
}

void SchemeSpec::validate() const {
    if (input_occupation.n_modes() != n_modes)
        throw std::invalid_argument("scheme: input occupation length != mode count");
    std::vector<bool> seen(static_cast<std::size_t>(n_modes), false);
    auto mark = [&](int m) {
        if (m < 0 || m >= n_modes) throw std::invalid_argument("scheme: mode index out of range");
        if (seen[static_cast<std::size_t>(m)])
            throw std::invalid_argument("scheme: logical/aux modes overlap");
        seen[static_cast<std::size_t>(m)] = true;
    };
    for (int m : logical_modes) mark(m);
    for (int m : aux_modes) mark(m);
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
        throw std::invalid_argument("scheme: logical and aux modes do not cover all modes");
    if (herald_pattern.n_modes() != static_cast<int>(aux_modes.size()))
        throw std::invalid_argument("scheme: herald pattern length != aux mode count");

    int heralded = herald_pattern.total();
    if (two_stage()) {
        if (fresh_photon_mode < 0 || fresh_photon_mode >= n_modes)
            throw std::invalid_argument("scheme: fresh photon mode out of range");
        if (stage2_herald.n_modes() != 1)
            throw std::invalid_argument("scheme: stage-2 herald must cover one mode");
        heralded += stage2_herald.total();
    }
    // Two photons stay in the logical modes; the rest are measured away.
    if (2 + heralded != total_photons())
        throw std::invalid_argument("scheme: photon bookkeeping is inconsistent");
}

SchemeSpec six_mode_scheme() {
    SchemeSpec s;
    s.type = SchemeType::SixMode;
    s.n_modes = 6;
    s.input_occupation = OccupationVector::parse("111100");
    s.aux_modes = {4, 5};
    s.herald_pattern = OccupationVector::parse("11");
    s.validate();
    return s;
}

SchemeSpec five_mode_scheme() {
    SchemeSpec s;
    s.type = SchemeType::FiveMode;
    s.n_modes = 5;
    s.input_occupation = OccupationVector::parse("11110");
    s.aux_modes = {4};
    s.herald_pattern = OccupationVector::parse("2");
    s.validate();
    return s;
}

SchemeSpec two_stage_scheme() {
    SchemeSpec s;
    s.type = SchemeType::TwoStage;
    s.n_modes = 5;
    s.input_occupation = OccupationVector::parse("11100");
    s.aux_modes = {4};
    s.herald_pattern = OccupationVector::parse("1");
    s.fresh_photon_mode = 4;
    s.stage2_herald = OccupationVector::parse("1");
    s.validate();
    return s;
}

}  // namespace bellforge
