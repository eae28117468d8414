#pragma once

#include <string>

#include <json.hpp>

#include "bellforge/interferometer.hpp"
#include "bellforge/optimize.hpp"
#include "bellforge/schemes.hpp"
#include "bellforge/simulate.hpp"

namespace bellforge {

nlohmann::json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const nlohmann::json& j);
void save_circuit(const Circuit& circuit, const std::string& path);
Circuit load_circuit(const std::string& path);

/// {"type": "six-mode"|"five-mode"|"two-stage", "input_occupation"?, "target"?};
/// omitted fields take the scheme defaults.
SchemeSpec scheme_from_json(const nlohmann::json& j);
/// Accepts either a bare scheme type name or a path to a JSON config file.
SchemeSpec load_scheme(const std::string& name_or_path);

nlohmann::json report_to_json(const CertificationReport& report);
void save_report(const CertificationReport& report, const std::string& path);

nlohmann::json residual_report_to_json(const ResidualReport& report);

/// Text fixture lines: `occupation TAB re TAB im`.
std::string state_to_fixture(const FockState& state);
FockState state_from_fixture(const std::string& text, int modes);

}  // namespace bellforge
