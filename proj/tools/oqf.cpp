#include <iostream>

#include <CLI11.hpp>

#include "oqf/cli/jobs.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Open quadratic fermion systems: evolve, steady, skin, verify"};
  app.require_subcommand(1);

  oqf::cli::Invocation inv;
  for (const char* name : {"evolve", "steady", "skin", "verify"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", inv.configPath, "YAML job description")->required();
    sub->add_option("--out", inv.outPath, "CSV output path (default: config output, else stdout)");
    sub->add_option("--seed", inv.seed, "seed for random verification instances");
    sub->add_option("--tol", inv.tolerance, "tolerance override");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : oqf::cli::kInvalidInput;
  }

  inv.command = oqf::cli::parse_command(app.get_subcommands().front()->get_name());
  return oqf::cli::execute(inv, std::cout, std::cerr);
}
