#include "sqc/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "sqc/error.hpp"
#include "sqc/rng.hpp"

namespace sqc {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& where) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (...) {
    fail("parse", where + ": bad number '" + v + "'");
  }
}

std::uint64_t parse_uint(const std::string& v, const std::string& where) {
  try {
    std::size_t pos = 0;
    unsigned long long d = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (...) {
    fail("parse", where + ": bad integer '" + v + "'");
  }
}

BiasSource parse_bias_source(const std::string& v, const std::string& where) {
  if (v == "cvar") return BiasSource::CvarPrefix;
  if (v == "full") return BiasSource::FullDistribution;
  if (v == "best") return BiasSource::BestSample;
  fail("parse", where + ": bias source must be cvar|full|best");
}

BiasFunction parse_bias_function(const std::string& v,
                                 const std::string& where) {
  if (v == "identity") return BiasFunction::Identity;
  if (v == "tanh") return BiasFunction::TanhScaled;
  fail("parse", where + ": bias function must be identity|tanh");
}

}  // namespace

SolveConfig SolveConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("parse", "cannot open config file: " + path);

  SolveConfig cfg;
  cfg.sa_stage.kind = StageConfig::Kind::Annealer;

  std::string line;
  std::size_t lineno = 0;
  bool saw_mode = false, saw_instance = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    std::string where = path + ":" + std::to_string(lineno);
    if (eq == std::string::npos)
      fail("parse", where + ": expected 'key = value'");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty() || value.empty())
      fail("parse", where + ": expected 'key = value'");

    if (key == "mode") {
      if (value != "standalone-annealer" && value != "standalone-bfdcqo" &&
          value != "sqc")
        fail("parse", where +
                          ": mode must be standalone-annealer|"
                          "standalone-bfdcqo|sqc");
      cfg.mode = value;
      saw_mode = true;
    } else if (key == "instance") {
      cfg.instance_path = value;
      saw_instance = true;
    } else if (key == "seed") {
      cfg.seed = parse_uint(value, where);
    } else if (key == "e0") {
      if (value == "auto" || value == "none") {
        cfg.e0_mode = value;
      } else {
        cfg.e0_mode = "value";
        cfg.e0_value = parse_double(value, where);
      }
    } else if (key == "bf.iterations") {
      cfg.bf.iterations = static_cast<std::uint32_t>(parse_uint(value, where));
    } else if (key == "bf.shots") {
      cfg.bf.shots = parse_uint(value, where);
    } else if (key == "bf.cvar_alpha") {
      cfg.bf.cvar_alpha = parse_double(value, where);
    } else if (key == "bf.ls_sweeps") {
      cfg.bf.ls_sweeps = static_cast<std::uint32_t>(parse_uint(value, where));
    } else if (key == "bf.ls_top_k") {
      cfg.bf.ls_top_k = static_cast<std::uint32_t>(parse_uint(value, where));
    } else if (key == "bf.n_trot") {
      cfg.bf.n_trot = static_cast<std::uint32_t>(parse_uint(value, where));
    } else if (key == "bf.total_time") {
      cfg.bf.total_time = parse_double(value, where);
    } else if (key == "bf.mode") {
      if (value == "cd_only")
        cfg.bf.mode = DcqoMode::CdOnly;
      else if (value == "full")
        cfg.bf.mode = DcqoMode::Full;
      else
        fail("parse", where + ": bf.mode must be cd_only|full");
    } else if (key == "bf.bias_source") {
      cfg.bf.bias_source = parse_bias_source(value, where);
    } else if (key == "bf.bias_function") {
      cfg.bf.bias_function = parse_bias_function(value, where);
    } else if (key == "sa.shots") {
      cfg.sa_stage.anneal_shots = parse_uint(value, where);
    } else if (key == "sa.sweeps") {
      cfg.sa_stage.anneal.sweeps =
          static_cast<std::uint32_t>(parse_uint(value, where));
    } else if (key == "sa.t_hot") {
      cfg.sa_stage.anneal.t_hot = parse_double(value, where);
    } else if (key == "sa.t_cold") {
      cfg.sa_stage.anneal.t_cold = parse_double(value, where);
    } else if (key == "sa.ls_sweeps") {
      cfg.sa_stage.anneal_ls_sweeps =
          static_cast<std::uint32_t>(parse_uint(value, where));
    } else if (key == "sa.ls_top_k") {
      cfg.sa_stage.anneal_ls_top_k =
          static_cast<std::uint32_t>(parse_uint(value, where));
    } else if (key == "sa.bias_source") {
      cfg.sa_stage.bias_source = parse_bias_source(value, where);
    } else if (key == "sa.bias_alpha") {
      cfg.sa_stage.bias_alpha = parse_double(value, where);
    } else if (key == "sa.bias_function") {
      cfg.sa_stage.bias_function = parse_bias_function(value, where);
    } else {
      fail("parse", where + ": unknown key '" + key + "'");
    }
  }
  if (!saw_mode) fail("parse", path + ": missing required key 'mode'");
  if (!saw_instance) fail("parse", path + ": missing required key 'instance'");
  return cfg;
}

std::string cmd_generate(const std::string& topology, std::uint32_t n,
                         double edge_prob, std::uint64_t seed,
                         const std::string& map_path, const std::string& out) {
  CouplingMap map;
  if (topology == "heavy-hex-156") {
    map = load_coupling_map(map_path);
  } else if (topology == "random-graph") {
    if (n < 1) fail("usage", "random-graph needs --n >= 1");
    if (edge_prob < 0.0 || edge_prob > 1.0)
      fail("usage", "--edge-prob must be in [0, 1]");
    map.num_nodes = n;
    std::mt19937_64 rng(seed);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j)
        if (uniform01(rng) < edge_prob) map.edges.push_back({i, j});
  } else {
    fail("usage", "unknown topology '" + topology +
                      "' (expected heavy-hex-156 or random-graph)");
  }
  derive_triples(map);
  HuboInstance inst = generate_sidon_instance(map, seed);
  save_instance(inst, out);
  return out;
}

SolveArtifacts cmd_solve(const SolveConfig& config,
                         const std::string& out_dir) {
  HuboInstance instance = load_instance(config.instance_path);

  std::optional<double> e0;
  if (config.e0_mode == "value") {
    e0 = config.e0_value;
  } else if (config.e0_mode == "auto" && instance.num_spins() <= 26) {
    e0 = brute_force_ground(instance).second;
  }

  std::vector<StageConfig> stages;
  if (config.mode == "standalone-annealer" || config.mode == "sqc") {
    StageConfig sa = config.sa_stage;
    sa.kind = StageConfig::Kind::Annealer;
    sa.anneal.seed = config.seed;
    stages.push_back(sa);
  }
  if (config.mode == "standalone-bfdcqo" || config.mode == "sqc") {
    StageConfig bf;
    bf.kind = StageConfig::Kind::BfDcqo;
    bf.bfdcqo = config.bf;
    bf.bfdcqo.seed = config.seed;
    stages.push_back(bf);
  }

  RunResult result = run_sqc(instance, stages, e0);

  fs::create_directories(out_dir);
  SolveArtifacts artifacts;
  artifacts.result = result_to_json(result, config.mode, config.seed,
                                    config.instance_path);
  if (result.error) artifacts.result["error"] = *result.error;

  std::string json_path = (fs::path(out_dir) / "result.json").string();
  write_result_json(artifacts.result, json_path);
  artifacts.files.push_back(json_path);

  if (!result.stages.empty()) {
    std::string csv_path = (fs::path(out_dir) / "samples.csv").string();
    SampleSet samples = result.stages.back().final_samples;
    samples.sort_by_energy();
    save_samples_csv(samples, csv_path);
    artifacts.files.push_back(csv_path);
  }

  std::string hist_path = (fs::path(out_dir) / "histogram.csv").string();
  write_histogram_csv(result, hist_path);
  artifacts.files.push_back(hist_path);

  artifacts.summary = comparison_table({artifacts.result});
  std::string summary_path = (fs::path(out_dir) / "summary.txt").string();
  std::ofstream sum(summary_path);
  if (!sum) fail("input", "cannot write " + summary_path);
  sum << artifacts.summary;
  artifacts.files.push_back(summary_path);

  if (result.error) fail("stage", *result.error);
  return artifacts;
}

std::string cmd_report(const std::vector<std::string>& result_paths) {
  if (result_paths.empty()) fail("usage", "report needs result files");
  std::vector<nlohmann::ordered_json> docs;
  docs.reserve(result_paths.size());
  for (const auto& p : result_paths) docs.push_back(load_result_json(p));
  return comparison_table(docs);
}

}  // namespace sqc
