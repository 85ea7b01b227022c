#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lcatf/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Time-frequency analysis on finite abelian groups"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "Run the experiment described by a JSON config");
  run->add_option("config", config_path, "Path to the config file")->required();

  CLI::App* list = app.add_subcommand("list-identities", "Print the checked identities");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*list) {
    std::cout << lcatf::list_identities_table();
    return 0;
  }
  return lcatf::run_config_file(config_path, std::cout, std::cerr);
}
