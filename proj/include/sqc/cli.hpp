#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqc/orchestrator.hpp"
#include "sqc/report.hpp"

namespace sqc {

// Parsed "key = value" run configuration; see docs in README for the key
// list. Unknown keys are rejected with a line number.
struct SolveConfig {
  std::string mode;  // standalone-annealer | standalone-bfdcqo | sqc
  std::string instance_path;
  std::uint64_t seed = 0;
  // "auto" brute-forces E0 when the instance fits, "none" skips AR
  std::string e0_mode = "auto";
  std::optional<double> e0_value;

  BfDcqoConfig bf;
  StageConfig sa_stage;  // annealer stage parameters

  static SolveConfig from_file(const std::string& path);
};

struct SolveArtifacts {
  nlohmann::ordered_json result;
  std::string summary;
  std::vector<std::string> files;  // everything written under out_dir
};

// generate subcommand: builds an instance file; returns the output path.
std::string cmd_generate(const std::string& topology, std::uint32_t n,
                         double edge_prob, std::uint64_t seed,
                         const std::string& map_path, const std::string& out);

// solve subcommand: runs the configured pipeline and writes result.json,
// samples.csv, histogram.csv and summary.txt under out_dir.
SolveArtifacts cmd_solve(const SolveConfig& config, const std::string& out_dir);

// report subcommand: merges result documents into one comparison table.
std::string cmd_report(const std::vector<std::string>& result_paths);

}  // namespace sqc
