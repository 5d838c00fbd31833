// Batch commands behind the nhll executable. Each writes its artifacts into
// `out` and returns a JSON summary (also printed by the CLI).
#pragma once

#include <filesystem>

#include "nhll/scenario.hpp"

namespace nhll {

/// spectrum.csv, clusters.json, spectrum_report.json, state_<idx>.csv,
/// continuum_<n>_<m>.csv and hamiltonian.txt.
json cmd_spectrum(const ScenarioConfig& config, const std::filesystem::path& out);

/// trajectory.csv, semiclassical.csv and fit_report.json.
json cmd_wavepacket(const ScenarioConfig& config, const std::filesystem::path& out);

/// biorthogonality_<k>.csv, ladder_residuals.csv, hamiltonian_convergence.csv,
/// gauge_sweep.csv and continuum_report.json.
json cmd_continuum(const ScenarioConfig& config, const std::filesystem::path& out);

/// effmass.csv.
json cmd_effmass(const ScenarioConfig& config, const std::filesystem::path& out);

}  // namespace nhll
