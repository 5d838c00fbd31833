// nhll <spectrum|wavepacket|continuum|effmass> --config <file> --out <dir> [--preset <name>]
#include <filesystem>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nhll/commands.hpp"

namespace {

int fail(const std::string& command, const std::string& kind, const std::string& message, int code) {
  const nlohmann::json err{{"error", {{"command", command}, {"kind", kind}, {"message", message}}}, {"exit_code", code}};
  std::cerr << err.dump() << std::endl;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-Hermitian Landau level laboratory"};
  app.require_subcommand(1);

  std::string config_file;
  std::string out_dir;
  std::string preset_name;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "scenario JSON")->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--preset", preset_name, "named preset, overlaid by --config");
  };
  CLI::App* spectrum = app.add_subcommand("spectrum", "lattice spectrum, Landau clusters and eigenstate dumps");
  CLI::App* wavepacket = app.add_subcommand("wavepacket", "wave-packet trajectory and semiclassical fit");
  CLI::App* continuum = app.add_subcommand("continuum", "continuum wavefunction checks");
  CLI::App* effmass = app.add_subcommand("effmass", "effective mass versus packet width");
  for (CLI::App* sub : {spectrum, wavepacket, continuum, effmass}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("", "usage", e.what(), 2);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  nhll::ScenarioConfig scenario;
  try {
    scenario = nhll::load_scenario(preset_name.empty() ? std::nullopt : std::optional<std::string>(preset_name),
                                   config_file.empty() ? std::nullopt
                                                       : std::optional<std::filesystem::path>(config_file));
  } catch (const std::exception& e) {
    return fail(command, "config", e.what(), 3);
  }

  try {
    const std::filesystem::path out(out_dir);
    std::filesystem::create_directories(out);
    nlohmann::json summary;
    if (command == "spectrum") summary = nhll::cmd_spectrum(scenario, out);
    if (command == "wavepacket") summary = nhll::cmd_wavepacket(scenario, out);
    if (command == "continuum") summary = nhll::cmd_continuum(scenario, out);
    if (command == "effmass") summary = nhll::cmd_effmass(scenario, out);
    std::cout << nlohmann::json{{"command", command}, {"out", out_dir}, {"summary", summary}}.dump(2) << std::endl;
  } catch (const std::invalid_argument& e) {
    return fail(command, "invalid_argument", e.what(), 4);
  } catch (const std::exception& e) {
    return fail(command, "runtime", e.what(), 5);
  }
  return 0;
}
