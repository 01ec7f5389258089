#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqc/cli.hpp"
#include "sqc/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Sequential quantum computing pipeline for higher-order Ising "
               "optimization"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a Sidon-coupling instance");
  std::string topology = "heavy-hex-156";
  std::uint32_t n = 0;
  double edge_prob = 0.5;
  std::uint64_t gen_seed = 0;
  std::string map_path = "data/heavy_hex_156.txt";
  std::string gen_out = "instance.txt";
  gen->add_option("--topology", topology,
                  "heavy-hex-156 or random-graph")->capture_default_str();
  gen->add_option("--n", n, "node count for random-graph");
  gen->add_option("--edge-prob", edge_prob, "edge probability for random-graph")
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "coupling seed")->capture_default_str();
  gen->add_option("--map", map_path, "edge-list file for heavy-hex-156")
      ->capture_default_str();
  gen->add_option("--out", gen_out, "output instance file")
      ->capture_default_str();

  // solve
  auto* solve = app.add_subcommand("solve", "Run a configured pipeline");
  std::string config_path;
  std::string out_dir = "run";
  std::int64_t seed_override = -1;
  solve->add_option("--config", config_path, "run configuration file")
      ->required();
  solve->add_option("--out", out_dir, "output directory")
      ->capture_default_str();
  solve->add_option("--seed", seed_override,
                    "override the config seed (>= 0)");

  // report
  auto* report = app.add_subcommand("report", "Merge result files into a table");
  std::vector<std::string> result_paths;
  report->add_option("results", result_paths, "result.json files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  }

  try {
    if (gen->parsed()) {
      std::string path =
          sqc::cmd_generate(topology, n, edge_prob, gen_seed, map_path, gen_out);
      std::cout << "wrote " << path << "\n";
    } else if (solve->parsed()) {
      sqc::SolveConfig cfg = sqc::SolveConfig::from_file(config_path);
      if (seed_override >= 0)
        cfg.seed = static_cast<std::uint64_t>(seed_override);
      sqc::SolveArtifacts artifacts = sqc::cmd_solve(cfg, out_dir);
      std::cout << artifacts.summary;
      for (const auto& f : artifacts.files) std::cout << "wrote " << f << "\n";
    } else if (report->parsed()) {
      std::cout << sqc::cmd_report(result_paths);
    }
  } catch (const sqc::Error& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
