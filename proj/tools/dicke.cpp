#include "dicke/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
  using namespace dicke::cli;

  CLI::App app{"Adiabatic elimination for the Dicke model: effective Hamiltonians, Wegner flow "
               "and detuning sweeps"};
  std::string config_path;
  std::string output;
  std::string format;
  app.add_option("config", config_path, "YAML run configuration")->required();
  app.add_option("--output", output, "Report path (overrides output.path)");
  app.add_option("--format", format, "Report format (overrides output.format)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.set_version_flag("--version", std::string(kVersion));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_record("UsageError", e.what()) << '\n';
    return 1;
  }

  RunConfig config;
  try {
    config = load_config(config_path);
  } catch (const dicke::Error& e) {
    std::cerr << error_record(e.kind(), e.what()) << '\n';
    return 1;
  }
  if (!output.empty()) config.output.path = output;
  if (!format.empty()) config.output.format = *parse_format(format);

  return execute(config, std::cout, std::cerr);
}
