// Serializable experiment configuration shared by all commands, with the
// shipped presets.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nhll/core.hpp"
#include "nhll/io.hpp"

namespace nhll {

struct ScenarioConfig {
  // field and lattice
  double B_re = 0.1;
  double B_im = -0.001;
  double E_x = 0.0;
  double E_y = 0.0;
  Gauge gauge = Gauge::Symmetric;
  int nx = 50;
  int ny = 50;

  // wave packet and propagation
  double sigma = 5.0;
  double k0x = 0.0;
  double k0y = 0.0;
  double center_x = 0.0;
  double center_y = 0.0;
  double dt = 0.05;
  int steps = 2000;
  double dt_tolerance = 1e-4;  // allowed COM shift between dt and dt/2 runs
  unsigned seed = 12345;

  // spectrum
  int n_max = 9;
  double radius = 0.0;  // <= 0 selects |B| / 4
  std::string reference = "lattice_band";  // or "continuum"
  std::string ang_mom_mode = "right";      // or "biorthogonal"
  int candidate_n_max = 5;
  int candidate_m_max = 40;
  int dump_levels = 3;
  bool dump_matrix = true;

  // effective mass
  double effmass_E = 0.01;
  std::vector<double> sigmas{1.0, 2.0, 3.0, 5.0, 8.0};

  // continuum checks
  std::vector<Complex> continuum_B{Complex(1.0, 0.0), Complex(0.1, -0.001), Complex(0.5, 0.3)};
  int continuum_max_index = 3;
  std::vector<Complex> gauge_sweep{Complex(1.0, -0.6), Complex(1.0, 0.9),  Complex(1.0, -0.97),
                                   Complex(1.0, 1.03), Complex(1.0, -1.1), Complex(1.0, 1.4)};

  Complex B() const { return {B_re, B_im}; }
};

json to_json(const ScenarioConfig& config);

/// Overlays the keys present in `j`; unknown keys and wrong types throw
/// std::invalid_argument and leave `config` untouched.
void apply_json(ScenarioConfig& config, const json& j);

ScenarioConfig scenario_from_json(const json& j);

/// Named preset; throws std::invalid_argument for unknown names.
ScenarioConfig preset(const std::string& name);
std::vector<std::string> preset_names();

/// Preset (if given) overlaid with the config file (if given). At least one is required.
ScenarioConfig load_scenario(const std::optional<std::string>& preset_name,
                             const std::optional<std::filesystem::path>& config_file);

/// Field-free configuration when B = 0, make_field_config otherwise.
FieldConfig field_config(const ScenarioConfig& config);
LatticeSpec lattice_spec(const ScenarioConfig& config);

}  // namespace nhll
