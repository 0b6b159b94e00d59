#include <iostream>

#include <CLI11.hpp>

#include "anchorfp/experiment.hpp"

int main(int argc, char** argv) {
  using namespace anchorfp;

  CLI::App app{"Anchored fixed-point iteration laboratory"};
  app.require_subcommand(1);

  std::string run_path;
  RunOverrides overrides;
  auto* run = app.add_subcommand("run", "Run an experiment file and write trace/summary files");
  run->add_option("file", run_path, "experiment JSON")->required();
  run->add_option("--max-iter", overrides.max_iter, "override max_iter");
  run->add_option("--tol", overrides.stop_tol, "override stop_tol");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check schedule hypotheses for the file's regime");
  validate->add_option("file", validate_path, "experiment JSON")->required();

  std::string sets;
  std::string anchor;
  auto* oracle = app.add_subcommand("oracle", "Project a point onto an intersection with Dykstra");
  oracle->add_option("--sets", sets, "set JSON (inline or path)")->required();
  oracle->add_option("--u", anchor, "point to project, comma separated")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code::error;
  }

  if (*run) return run_command(run_path, overrides, std::cout, std::cerr);
  if (*validate) return validate_command(validate_path, std::cout, std::cerr);
  return oracle_command(sets, anchor, std::cout, std::cerr);
}
