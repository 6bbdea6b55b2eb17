#include <iostream>

#include <CLI11.hpp>

#include "chanfactor/commands.hpp"

int main(int argc, char** argv) {
  using chanfactor::cli::RunConfig;

  CLI::App app{"Classical and quantum factorization of finite channels"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::size_t points = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.output, "Write the primary output to this file");
    sub->add_option("--tol", cfg.tol, "Row-equality / verification tolerance")->check(CLI::PositiveNumber);
  };

  auto* factorize = app.add_subcommand("factorize", "Causal partition and reduced channel");
  factorize->add_option("channel", cfg.input, "Channel JSON file")->required();
  factorize->add_option("--dist", cfg.distribution, "Input distribution, e.g. 0.25,0.25,0.25,0.25");
  common(factorize);

  auto* qfactorize = app.add_subcommand("qfactorize", "G0 quantum factorization report");
  qfactorize->add_option("channel", cfg.input, "Channel JSON file")->required();
  qfactorize->add_option("--dist", cfg.distribution, "Input distribution (default uniform)");
  qfactorize->add_option("--partition", cfg.partition, "Explicit partition, e.g. \"0,2;1,3\"");
  qfactorize->add_option("--check", cfg.check, "Verify this q-factorization JSON instead of building G0");
  common(qfactorize);

  auto* heatmap = app.add_subcommand("heatmap", "Quantum advantage H(Z) - S(rho) over (p, alpha) for the RBSC");
  heatmap->add_option("--p-steps", cfg.p_steps, "Grid points along p")->check(CLI::Range(2, 100000));
  heatmap->add_option("--alpha-steps", cfg.alpha_steps, "Grid points along alpha")->check(CLI::Range(2, 100000));
  common(heatmap);

  auto* phase_scan = app.add_subcommand("phase-scan", "Check that equal phases minimize qubit ensemble entropy");
  phase_scan->add_option("ensemble", cfg.input, "Ensemble JSON {weights, a, b}; omit to draw one from --seed");
  phase_scan->add_option("--points", points, "Grid resolution per phase");
  phase_scan->add_option("--seed", cfg.seed, "Seed for a generated ensemble");
  phase_scan->add_option("--states", cfg.states, "Number of states for a generated ensemble");
  common(phase_scan);

  auto* casestudy = app.add_subcommand("casestudy", "Entropy/purity curve of the SIC one-parameter family");
  casestudy->add_option("--points", points, "Samples over t in [-0.5, 1]")->check(CLI::Range(3, 1000000));
  common(casestudy);

  auto* merge_demo = app.add_subcommand("merge-demo", "Quantum merging examples");
  common(merge_demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return chanfactor::cli::kExitParse;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (points != 0) cfg.points = points;

  const auto result = chanfactor::cli::run(cfg);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
