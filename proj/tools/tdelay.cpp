#include <CLI11.hpp>
#include <iostream>

#include "friedrichs/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Time delay in the Friedrichs model"};
  app.require_subcommand(1);
  std::string config, out = "out";
  bool check = false;
  for (const char* name : {"smatrix", "timedelay-sweep", "propagation", "spectral-shift", "point-spectrum"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "experiment config file")->required();
    sub->add_option("--out", out, "output directory");
    sub->add_flag("--check", check, "validate the config only");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : friedrichs::kExitValidation;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  return friedrichs::run_experiment_guarded(name, config, out, check, std::cerr);
}
