#pragma once

// Experiment configuration documents (JSON).
//
//   {
//     "field":      {"Omega": 1, "T_f0": 1, "dim": 30},
//     "reservoir":  {"kind": "multi-atom" | "multilevel", "N": 1, "T_a": 2, "omega": 1},
//     "coupling":   {"g": 0.08, "tau": 0.5, "tau0": 0, "gamma": 1e-9, "kappa": 5e-11},
//     "integrator": {"dt": 0.0125},
//     "run":        {"collisions_max": 20000}
//   }
//
// Required: reservoir.kind, reservoir.N, reservoir.T_a, field.T_f0, coupling.g,
// coupling.tau. Unknown keys are rejected.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "micromaser/dynamics.hpp"

namespace micromaser {

/// Largest thermal-tail population accepted for the truncated field.
inline constexpr double kMaxThermalTail = 1e-6;
inline constexpr Index kMinDefaultDim = 15;
inline constexpr Index kMaxDefaultDim = 120;

SimulationConfig parse_config(std::string_view text);
SimulationConfig parse_config(const nlohmann::json& doc);

/// Checks every bound of the configuration and returns non-fatal warnings.
/// Throws ValidationError, GainRegimeError or TruncationError.
std::vector<std::string> validate(const SimulationConfig& config);

/// Fock dimension ceil(10 (n̄ + 1)) for the hotter of the initial field and the
/// reservoir's steady state, clamped to [15, 120] and grown until the thermal
/// tail drops below kMaxThermalTail.
Index default_field_dim(double T_f0, const ReservoirSpec& reservoir, double Omega);

nlohmann::json to_json(const SimulationConfig& config);

const char* to_string(ReservoirKind kind) noexcept;

}  // namespace micromaser
