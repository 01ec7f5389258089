#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sqc/agp.hpp"
#include "sqc/annealer.hpp"
#include "sqc/circuit.hpp"
#include "sqc/model.hpp"

namespace sqc {

// How measurement statistics become the next bias field.
enum class BiasSource : std::uint8_t {
  CvarPrefix,        // <sigma^z> over the ceil(alpha n) lowest-energy samples
  FullDistribution,  // <sigma^z> over all samples
  BestSample,        // spins of the single lowest-energy sample
};

enum class BiasFunction : std::uint8_t {
  Identity,    // h^b = <sigma^z>
  TanhScaled,  // h^b = tanh(3 <sigma^z>)
};

BiasConfig update_bias(const SampleSet& samples, double alpha,
                       BiasSource source = BiasSource::CvarPrefix,
                       BiasFunction g = BiasFunction::Identity);

// Greedy single-flip descent over the top_k lowest-energy distinct samples,
// index order, strictly downhill moves only.
SampleSet local_search(const SampleSet& samples, const HuboInstance& instance,
                       std::uint32_t sweeps, std::uint32_t top_k);

// Solver stage plug point. Implementations must be deterministic per seed
// and attach energies evaluated on the given instance.
class Backend {
public:
  virtual ~Backend() = default;
  virtual std::string name() const = 0;
  virtual bool accepts_bias() const = 0;
  virtual SampleSet solve(const HuboInstance& instance,
                          const std::optional<BiasConfig>& bias,
                          std::uint64_t shots, std::uint64_t seed) = 0;
};

// Digital stage: builds the DCQO circuit for the current bias, runs the
// statevector simulator and samples.
class SimulatorBackend : public Backend {
public:
  SimulatorBackend(Schedule schedule, DcqoMode mode)
      : schedule_(schedule), mode_(mode) {}
  std::string name() const override { return "simulator-dcqo"; }
  bool accepts_bias() const override { return true; }
  SampleSet solve(const HuboInstance& instance,
                  const std::optional<BiasConfig>& bias, std::uint64_t shots,
                  std::uint64_t seed) override;

private:
  Schedule schedule_;
  DcqoMode mode_;
};

// Analog stand-in: HUBO -> QUBO reduction followed by simulated annealing.
// Shots map to restarts; the bias input is ignored.
class AnnealerBackend : public Backend {
public:
  explicit AnnealerBackend(AnnealParams params) : params_(params) {}
  std::string name() const override { return "annealer-sa"; }
  bool accepts_bias() const override { return false; }
  SampleSet solve(const HuboInstance& instance,
                  const std::optional<BiasConfig>& bias, std::uint64_t shots,
                  std::uint64_t seed) override;

private:
  AnnealParams params_;
};

struct BfDcqoConfig {
  std::uint32_t iterations = 10;
  std::uint64_t shots = 1000;
  double cvar_alpha = 0.44;  // ~ the 2200-of-5000 cohort
  std::uint32_t ls_sweeps = 3;
  std::uint32_t ls_top_k = 0;  // 0 -> ceil(cvar_alpha * shots)
  double total_time = 1.0;
  std::uint32_t n_trot = 3;
  DcqoMode mode = DcqoMode::CdOnly;
  BiasSource bias_source = BiasSource::CvarPrefix;
  BiasFunction bias_function = BiasFunction::Identity;
  std::uint64_t seed = 0;

  std::uint32_t effective_top_k() const;
};

struct IterationRecord {
  std::uint32_t iteration = 0;
  std::uint64_t shots = 0;
  double mean_energy = 0.0;  // E(alpha=1) after local search
  double best_energy = 0.0;  // best-so-far within the stage
  std::string best_bitstring;
  std::optional<double> ar;       // mean_energy / E0
  std::optional<double> best_ar;  // best_energy / E0
  std::vector<double> bias_b;     // h^b entering this iteration
};

struct StageResult {
  std::string backend;
  std::vector<IterationRecord> iterations;
  std::uint64_t shots_used = 0;
  SampleSet final_samples;  // post local search
};

struct RunResult {
  std::vector<StageResult> stages;
  std::uint64_t total_shots = 0;
  double best_energy = 0.0;
  std::string best_bitstring;
  std::optional<double> e0;
  // set when a stage aborted; earlier stages are preserved
  std::optional<std::string> error;
};

// The BF-DCQO loop. Iteration 0 uses initial_bias when given (the SQC warm
// start), otherwise h^x = -1, h^b = 0. Stops early once the best energy
// reaches e0. iterations = 0 samples the prepared initial state once.
RunResult run_bf_dcqo(const HuboInstance& instance, const BfDcqoConfig& config,
                      Backend& backend,
                      std::optional<BiasConfig> initial_bias = std::nullopt,
                      std::optional<double> e0 = std::nullopt);

struct StageConfig {
  enum class Kind : std::uint8_t { Annealer, BfDcqo } kind = Kind::BfDcqo;
  // annealer stage
  AnnealParams anneal;
  std::uint64_t anneal_shots = 300;
  std::uint32_t anneal_ls_sweeps = 1;
  std::uint32_t anneal_ls_top_k = 1;
  // bf-dcqo stage
  BfDcqoConfig bfdcqo;
  // bias handed to the next stage
  double bias_alpha = 0.44;
  BiasSource bias_source = BiasSource::BestSample;
  BiasFunction bias_function = BiasFunction::Identity;
};

// Runs the stages sequentially, converting each stage's post-LS samples
// into the next stage's initial bias fields.
RunResult run_sqc(const HuboInstance& instance,
                  const std::vector<StageConfig>& stages,
                  std::optional<double> e0 = std::nullopt);

}  // namespace sqc
