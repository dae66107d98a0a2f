#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ratext/cli.hpp"

using namespace ratext;

int main(int argc, char** argv) {
  CLI::App app{"Rational Darboux-Crum extensions of shape-invariant potentials"};
  app.require_subcommand(1);
  std::string config, out;
  std::optional<double> grid, truncate;
  for (const char* name : {"extend", "classify", "spectrum", "verify", "curve", "equivalence"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "JSON job configuration")->required();
    sub->add_option("--out", out, "output directory (overrides the config)");
    sub->add_option("--grid", grid, "coarse finite-difference spacing");
    sub->add_option("--truncate", truncate, "domain truncation |x| <= truncate");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  const Command cmd = parse_command(app.get_subcommands().front()->get_name());

  JobConfig cfg;
  RunReport rep;
  try {
    cfg = JobConfig::load(config);
    if (!out.empty()) cfg.out_dir = out;
    if (grid) {
      if (!(*grid > 0.0)) throw ConfigError("--grid: must be positive");
      cfg.numeric.grid = *grid;
    }
    if (truncate) {
      if (!(*truncate > 0.0)) throw ConfigError("--truncate: must be positive");
      cfg.numeric.truncate = *truncate;
    }
    rep = run(cfg, cmd);
  } catch (const DomainError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  for (const auto& c : rep.checks) {
    std::cerr << (c.pass ? "pass " : "FAIL ") << c.name << ": " << c.detail << "\n";
  }
  std::cout << rep.artifacts.at("report.json") << "\n";
  return exit_code(rep);
}
