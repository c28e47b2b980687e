// sta: shortcut-to-adiabaticity pulse design and simulation for a Lambda system.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "sta/commands.hpp"
#include "sta/config.hpp"
#include "sta/error.hpp"

namespace {

// "schedule.gamma0_pi" -> "gamma0-pi"; "seed" -> "seed"
std::string flag_name(const std::string& key) {
  std::string name = key.substr(key.find('.') + 1);
  for (char& ch : name) {
    if (ch == '_') ch = '-';
  }
  return name;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pulse design and simulation for shortcut-to-adiabaticity population transfer"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  app.add_option("--config", config_path, "flat key = value configuration file");
  app.add_option("--out", out_dir, "output directory (overrides output_dir)");

  std::map<std::string, std::string> overrides;
  for (const std::string& key : sta::config_keys()) {
    if (key == "output_dir") continue;
    app.add_option("--" + flag_name(key), overrides[key], "override " + key);
  }

  for (std::string_view name : sta::command_names()) {
    app.add_subcommand(std::string(name));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sta::kExitConfig;
  }

  sta::RunConfig config;
  try {
    if (!config_path.empty()) config = sta::load_config(config_path);
    for (const auto& [key, value] : overrides) {
      if (app.count("--" + flag_name(key)) > 0) sta::apply_setting(config, key, value);
    }
    if (!out_dir.empty()) config.output_dir = out_dir;
    config.validate();
  } catch (const sta::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return sta::kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  return sta::run(command, config, std::cout, std::cerr);
}
