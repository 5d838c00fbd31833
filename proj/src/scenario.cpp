#include "nhll/scenario.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>

namespace nhll {

namespace {

json complex_list(const std::vector<Complex>& values) {
  json out = json::array();
  for (const Complex& v : values) out.push_back({v.real(), v.imag()});
  return out;
}

std::vector<Complex> parse_complex_list(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a list of [re, im] pairs");
  std::vector<Complex> out;
  for (const json& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
      throw std::invalid_argument("expected [re, im] pair, got " + item.dump());
    }
    out.emplace_back(item[0].get<double>(), item[1].get<double>());
  }
  return out;
}

template <typename T>
T get_as(const json& j) {
  if constexpr (std::is_same_v<T, bool>) {
    if (!j.is_boolean()) throw std::invalid_argument("expected boolean, got " + j.dump());
  } else if constexpr (std::is_integral_v<T>) {
    if (!j.is_number_integer()) throw std::invalid_argument("expected integer, got " + j.dump());
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!j.is_number()) throw std::invalid_argument("expected number, got " + j.dump());
  } else {
    if (!j.is_string()) throw std::invalid_argument("expected string, got " + j.dump());
  }
  return j.get<T>();
}

using Setter = std::function<void(ScenarioConfig&, const json&)>;

template <typename T>
Setter field_setter(T ScenarioConfig::*member) {
  return [member](ScenarioConfig& c, const json& j) { c.*member = get_as<T>(j); };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"B_re", field_setter(&ScenarioConfig::B_re)},
      {"B_im", field_setter(&ScenarioConfig::B_im)},
      {"E_x", field_setter(&ScenarioConfig::E_x)},
      {"E_y", field_setter(&ScenarioConfig::E_y)},
      {"gauge", [](ScenarioConfig& c, const json& j) { c.gauge = gauge_from_string(get_as<std::string>(j)); }},
      {"nx", field_setter(&ScenarioConfig::nx)},
      {"ny", field_setter(&ScenarioConfig::ny)},
      {"sigma", field_setter(&ScenarioConfig::sigma)},
      {"k0x", field_setter(&ScenarioConfig::k0x)},
      {"k0y", field_setter(&ScenarioConfig::k0y)},
      {"center_x", field_setter(&ScenarioConfig::center_x)},
      {"center_y", field_setter(&ScenarioConfig::center_y)},
      {"dt", field_setter(&ScenarioConfig::dt)},
      {"steps", field_setter(&ScenarioConfig::steps)},
      {"dt_tolerance", field_setter(&ScenarioConfig::dt_tolerance)},
      {"seed", field_setter(&ScenarioConfig::seed)},
      {"n_max", field_setter(&ScenarioConfig::n_max)},
      {"radius", field_setter(&ScenarioConfig::radius)},
      {"reference",
       [](ScenarioConfig& c, const json& j) {
         const std::string v = get_as<std::string>(j);
         if (v != "lattice_band" && v != "continuum") {
           throw std::invalid_argument("reference must be lattice_band or continuum");
         }
         c.reference = v;
       }},
      {"ang_mom_mode",
       [](ScenarioConfig& c, const json& j) {
         const std::string v = get_as<std::string>(j);
         if (v != "right" && v != "biorthogonal") throw std::invalid_argument("ang_mom_mode must be right or biorthogonal");
         c.ang_mom_mode = v;
       }},
      {"candidate_n_max", field_setter(&ScenarioConfig::candidate_n_max)},
      {"candidate_m_max", field_setter(&ScenarioConfig::candidate_m_max)},
      {"dump_levels", field_setter(&ScenarioConfig::dump_levels)},
      {"dump_matrix", field_setter(&ScenarioConfig::dump_matrix)},
      {"effmass_E", field_setter(&ScenarioConfig::effmass_E)},
      {"sigmas",
       [](ScenarioConfig& c, const json& j) {
         if (!j.is_array()) throw std::invalid_argument("sigmas must be a list of numbers");
         c.sigmas.clear();
         for (const json& v : j) c.sigmas.push_back(get_as<double>(v));
       }},
      {"continuum_B", [](ScenarioConfig& c, const json& j) { c.continuum_B = parse_complex_list(j); }},
      {"continuum_max_index", field_setter(&ScenarioConfig::continuum_max_index)},
      {"gauge_sweep", [](ScenarioConfig& c, const json& j) { c.gauge_sweep = parse_complex_list(j); }},
  };
  return table;
}

void validate(const ScenarioConfig& c) {
  if (c.nx < 2 || c.ny < 2) throw std::invalid_argument("nx and ny must be at least 2");
  if (!(c.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(c.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (c.steps < 1) throw std::invalid_argument("steps must be positive");
  if (c.n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  if (c.continuum_max_index < 0) throw std::invalid_argument("continuum_max_index must be non-negative");
  for (double s : c.sigmas)
    if (!(s > 0.0)) throw std::invalid_argument("sigmas must be positive");
}

}  // namespace

json to_json(const ScenarioConfig& c) {
  return json{{"B_re", c.B_re},
              {"B_im", c.B_im},
              {"E_x", c.E_x},
              {"E_y", c.E_y},
              {"gauge", to_string(c.gauge)},
              {"nx", c.nx},
              {"ny", c.ny},
              {"sigma", c.sigma},
              {"k0x", c.k0x},
              {"k0y", c.k0y},
              {"center_x", c.center_x},
              {"center_y", c.center_y},
              {"dt", c.dt},
              {"steps", c.steps},
              {"dt_tolerance", c.dt_tolerance},
              {"seed", c.seed},
              {"n_max", c.n_max},
              {"radius", c.radius},
              {"reference", c.reference},
              {"ang_mom_mode", c.ang_mom_mode},
              {"candidate_n_max", c.candidate_n_max},
              {"candidate_m_max", c.candidate_m_max},
              {"dump_levels", c.dump_levels},
              {"dump_matrix", c.dump_matrix},
              {"effmass_E", c.effmass_E},
              {"sigmas", c.sigmas},
              {"continuum_B", complex_list(c.continuum_B)},
              {"continuum_max_index", c.continuum_max_index},
              {"gauge_sweep", complex_list(c.gauge_sweep)}};
}

void apply_json(ScenarioConfig& config, const json& j) {
  if (!j.is_object()) throw std::invalid_argument("configuration must be a JSON object");
  ScenarioConfig next = config;
  for (const auto& [key, value] : j.items()) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw std::invalid_argument("unknown configuration key '" + key + "'");
    try {
      it->second(next, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("configuration key '" + key + "': " + e.what());
    }
  }
  validate(next);
  config = std::move(next);
}

ScenarioConfig scenario_from_json(const json& j) {
  ScenarioConfig c;
  apply_json(c, j);
  return c;
}

ScenarioConfig preset(const std::string& name) {
  ScenarioConfig c;
  const double k0 = std::numbers::pi / 40.0;
  if (name == "fig1") {
    // 50x50, B = 0.1 - 0.001i, symmetric gauge: the defaults
  } else if (name == "fig2a") {
    c.k0x = k0;
  } else if (name == "fig2b") {
    c.E_x = 0.005;
  } else if (name == "fig2b-strong") {
    // drift |E/B| ~ 1 site per unit time along -y: tall lattice, start near the top
    c.E_x = 0.1;
    c.nx = 60;
    c.ny = 120;
    c.center_y = 40.0;
    c.dt = 0.025;
    c.steps = 2800;
  } else if (name == "figS1") {
    c.B_re = 0.0;
    c.B_im = 0.0;
  } else if (name == "hermitian") {
    c.B_im = 0.0;
    c.k0x = k0;
  } else if (name == "zero-field") {
    c.B_re = 0.0;
    c.B_im = 0.0;
    c.k0x = k0;
    c.steps = 400;
  } else if (name == "continuum") {
    c.B_re = 1.0;
    c.B_im = 0.0;
  } else if (name == "gauge-landau") {
    c.B_im = -0.05;
    c.gauge = Gauge::Landau;
  } else {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown preset '" + name + "' (known: " + known + ")");
  }
  return c;
}

std::vector<std::string> preset_names() {
  return {"fig1", "fig2a", "fig2b", "fig2b-strong", "figS1", "hermitian", "zero-field", "continuum", "gauge-landau"};
}

ScenarioConfig load_scenario(const std::optional<std::string>& preset_name,
                             const std::optional<std::filesystem::path>& config_file) {
  if (!preset_name && !config_file) throw std::invalid_argument("need --config and/or --preset");
  ScenarioConfig c = preset_name ? preset(*preset_name) : ScenarioConfig{};
  if (config_file) {
    std::ifstream in(*config_file);
    if (!in) throw std::invalid_argument("cannot open config file " + config_file->string());
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument("config file " + config_file->string() + " is not valid JSON: " + e.what());
    }
    apply_json(c, j);
  }
  validate(c);
  return c;
}

FieldConfig field_config(const ScenarioConfig& c) {
  const Eigen::Vector2d E(c.E_x, c.E_y);
  if (c.B_re == 0.0 && c.B_im == 0.0) return make_field_free_config(E, c.gauge);
  return make_field_config(c.B(), E, c.gauge);
}

LatticeSpec lattice_spec(const ScenarioConfig& c) { return make_lattice(c.nx, c.ny); }

}  // namespace nhll
