#include "sqc/orchestrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "sqc/error.hpp"
#include "sqc/simulator.hpp"

namespace sqc {

namespace {

double apply_bias_function(BiasFunction g, double x) {
  switch (g) {
    case BiasFunction::Identity: return x;
    case BiasFunction::TanhScaled: return std::tanh(3.0 * x);
  }
  return x;
}

// Distinct samples sorted by (energy, bitstring) ascending, multiplicities
// merged.
std::vector<SampleEntry> sorted_distinct(const SampleSet& samples) {
  std::map<std::string, SampleEntry> merged;
  for (const auto& e : samples.entries) {
    auto [it, fresh] = merged.emplace(e.bitstring, e);
    if (!fresh) it->second.multiplicity += e.multiplicity;
  }
  std::vector<SampleEntry> out;
  out.reserve(merged.size());
  for (auto& [bits, e] : merged) out.push_back(std::move(e));
  std::sort(out.begin(), out.end(), [](const SampleEntry& a, const SampleEntry& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.bitstring < b.bitstring;
  });
  return out;
}

}  // namespace

BiasConfig update_bias(const SampleSet& samples, double alpha,
                       BiasSource source, BiasFunction g) {
  if (samples.empty()) fail("input", "empty sample set");
  if (!(alpha > 0.0) || alpha > 1.0) fail("input", "alpha must be in (0, 1]");
  const std::uint32_t n = samples.num_spins;
  auto distinct = sorted_distinct(samples);

  std::uint64_t want = 0;
  switch (source) {
    case BiasSource::CvarPrefix:
      want = static_cast<std::uint64_t>(
          std::ceil(alpha * static_cast<double>(samples.total_shots)));
      want = std::max<std::uint64_t>(want, 1);
      break;
    case BiasSource::FullDistribution:
      want = samples.total_shots;
      break;
    case BiasSource::BestSample:
      want = 1;
      break;
  }

  std::vector<double> mz(n, 0.0);
  std::uint64_t taken = 0;
  for (const auto& e : distinct) {
    std::uint64_t take = std::min<std::uint64_t>(e.multiplicity, want - taken);
    for (std::uint32_t j = 0; j < n; ++j)
      mz[j] += (e.bitstring[j] == '0' ? 1.0 : -1.0) *
               static_cast<double>(take);
    taken += take;
    if (taken == want) break;
  }

  BiasConfig bias = BiasConfig::uniform(n);
  for (std::uint32_t j = 0; j < n; ++j)
    bias.h_b[j] =
        apply_bias_function(g, mz[j] / static_cast<double>(taken));
  return bias;
}

SampleSet local_search(const SampleSet& samples, const HuboInstance& instance,
                       std::uint32_t sweeps, std::uint32_t top_k) {
  const std::uint32_t n = instance.num_spins();
  if (samples.num_spins != n) fail("dimension", "sample/instance mismatch");
  auto distinct = sorted_distinct(samples);

  std::vector<std::vector<std::pair<double, Term>>> incident(n);
  for (const auto& [t, c] : instance.terms())
    for (std::uint32_t i : t) incident[i].push_back({c, t});

  const std::size_t refine = std::min<std::size_t>(top_k, distinct.size());
  std::map<std::string, std::pair<std::uint64_t, double>> agg;
  for (std::size_t s = 0; s < distinct.size(); ++s) {
    SampleEntry e = distinct[s];
    if (s < refine && sweeps > 0) {
      SpinConfig cfg = SpinConfig::from_bitstring(e.bitstring);
      double en = e.energy;
      for (std::uint32_t sweep = 0; sweep < sweeps; ++sweep) {
        for (std::uint32_t i = 0; i < n; ++i) {
          double local = 0.0;
          for (const auto& [c, t] : incident[i]) {
            int prod = 1;
            for (std::uint32_t q : t) prod *= cfg.spins[q];
            local += c * prod;
          }
          double delta = -2.0 * local;
          if (delta < 0.0) {  // strictly downhill only
            cfg.spins[i] = static_cast<std::int8_t>(-cfg.spins[i]);
            en += delta;
          }
        }
      }
      e.bitstring = cfg.to_bitstring();
      e.energy = en;
    }
    auto [it, fresh] =
        agg.emplace(e.bitstring, std::make_pair(e.multiplicity, e.energy));
    if (!fresh) it->second.first += e.multiplicity;
  }

  SampleSet out;
  out.num_spins = n;
  out.total_shots = samples.total_shots;
  for (const auto& [bits, me] : agg)
    out.entries.push_back({bits, me.first, me.second});
  return out;
}

SampleSet SimulatorBackend::solve(const HuboInstance& instance,
                                  const std::optional<BiasConfig>& bias,
                                  std::uint64_t shots, std::uint64_t seed) {
  BiasConfig b = bias.value_or(BiasConfig::uniform(instance.num_spins()));
  CircuitIR circuit = build_dcqo_circuit(instance, b, schedule_, mode_);
  StateVector state(instance.num_spins());
  run_circuit(state, circuit);
  return sample(state, instance, shots, seed);
}

SampleSet AnnealerBackend::solve(const HuboInstance& instance,
                                 const std::optional<BiasConfig>& bias,
                                 std::uint64_t shots, std::uint64_t seed) {
  (void)bias;  // the analog stand-in takes no bias input
  AnnealParams p = params_;
  p.restarts = static_cast<std::uint32_t>(shots);
  p.seed = seed;
  QuboInstance qubo = hubo_to_qubo(instance);
  return simulated_anneal(qubo, instance, p);
}

std::uint32_t BfDcqoConfig::effective_top_k() const {
  if (ls_top_k > 0) return ls_top_k;
  return static_cast<std::uint32_t>(
      std::ceil(cvar_alpha * static_cast<double>(shots)));
}

RunResult run_bf_dcqo(const HuboInstance& instance, const BfDcqoConfig& config,
                      Backend& backend, std::optional<BiasConfig> initial_bias,
                      std::optional<double> e0) {
  if (!backend.accepts_bias())
    fail("input", "backend does not accept bias fields");
  if (!(config.cvar_alpha > 0.0) || config.cvar_alpha > 1.0)
    fail("input", "cvar_alpha must be in (0, 1]");
  const std::uint32_t n = instance.num_spins();
  BiasConfig bias = initial_bias.value_or(BiasConfig::uniform(n));
  if (bias.size() != n) fail("dimension", "initial bias size mismatch");

  RunResult result;
  result.e0 = e0;
  StageResult stage;
  stage.backend = backend.name();

  if (config.iterations == 0) {
    // Sample the prepared initial state, nothing else.
    StateVector state = prepare_bias_state(bias);
    SampleSet samples = sample(state, instance, config.shots, config.seed);
    IterationRecord rec;
    rec.iteration = 0;
    rec.shots = config.shots;
    rec.mean_energy = cvar_energy(samples, 1.0);
    const auto& best = samples.best();
    rec.best_energy = best.energy;
    rec.best_bitstring = best.bitstring;
    if (e0) {
      rec.ar = rec.mean_energy / *e0;
      rec.best_ar = rec.best_energy / *e0;
    }
    rec.bias_b = bias.h_b;
    stage.iterations.push_back(rec);
    stage.shots_used = config.shots;
    stage.final_samples = samples;
    result.stages.push_back(std::move(stage));
    result.total_shots = config.shots;
    result.best_energy = best.energy;
    result.best_bitstring = best.bitstring;
    return result;
  }

  double best_energy = std::numeric_limits<double>::infinity();
  std::string best_bits;
  for (std::uint32_t it = 1; it <= config.iterations; ++it) {
    SampleSet raw = backend.solve(instance, bias, config.shots,
                                  config.seed + it);
    SampleSet post = local_search(raw, instance, config.ls_sweeps,
                                  config.effective_top_k());
    const auto& best = post.best();
    if (best.energy < best_energy) {
      best_energy = best.energy;
      best_bits = best.bitstring;
    }

    IterationRecord rec;
    rec.iteration = it;
    rec.shots = config.shots;
    rec.mean_energy = cvar_energy(post, 1.0);
    rec.best_energy = best_energy;
    rec.best_bitstring = best_bits;
    if (e0) {
      rec.ar = rec.mean_energy / *e0;
      rec.best_ar = best_energy / *e0;
    }
    rec.bias_b = bias.h_b;
    stage.iterations.push_back(rec);
    stage.shots_used += config.shots;
    stage.final_samples = post;

    BiasConfig next = update_bias(post, config.cvar_alpha, config.bias_source,
                                  config.bias_function);
    next.h_x = bias.h_x;  // transverse fields are never updated
    bias = std::move(next);

    if (e0 && best_energy <= *e0 + 1e-9) break;
  }

  result.total_shots = stage.shots_used;
  result.best_energy = best_energy;
  result.best_bitstring = best_bits;
  result.stages.push_back(std::move(stage));
  return result;
}

namespace {

// One SQC stage; appends StageResults and updates the carried bias.
void run_stage(const HuboInstance& instance, const StageConfig& cfg,
               std::optional<BiasConfig>& carry,
               const std::optional<double>& e0, RunResult& result) {
  if (cfg.kind == StageConfig::Kind::Annealer) {
    AnnealerBackend backend(cfg.anneal);
    SampleSet raw =
        backend.solve(instance, carry, cfg.anneal_shots, cfg.anneal.seed);
    SampleSet post = local_search(raw, instance, cfg.anneal_ls_sweeps,
                                  cfg.anneal_ls_top_k);
    StageResult stage;
    stage.backend = backend.name();
    stage.shots_used = cfg.anneal_shots;
    stage.final_samples = post;
    IterationRecord rec;
    rec.iteration = 1;
    rec.shots = cfg.anneal_shots;
    rec.mean_energy = cvar_energy(post, 1.0);
    const auto& best = post.best();
    rec.best_energy = best.energy;
    rec.best_bitstring = best.bitstring;
    if (e0) {
      rec.ar = rec.mean_energy / *e0;
      rec.best_ar = rec.best_energy / *e0;
    }
    if (carry) rec.bias_b = carry->h_b;
    stage.iterations.push_back(rec);
    result.stages.push_back(std::move(stage));
  } else {
    SimulatorBackend backend(
        build_schedule(cfg.bfdcqo.total_time, cfg.bfdcqo.n_trot),
        cfg.bfdcqo.mode);
    RunResult sub = run_bf_dcqo(instance, cfg.bfdcqo, backend, carry, e0);
    for (auto& s : sub.stages) result.stages.push_back(std::move(s));
  }

  const StageResult& done = result.stages.back();
  result.total_shots += done.shots_used;
  double stage_best = done.iterations.back().best_energy;
  if (stage_best < result.best_energy) {
    result.best_energy = stage_best;
    result.best_bitstring = done.iterations.back().best_bitstring;
  }

  carry = update_bias(done.final_samples, cfg.bias_alpha, cfg.bias_source,
                      cfg.bias_function);
}

}  // namespace

RunResult run_sqc(const HuboInstance& instance,
                  const std::vector<StageConfig>& stages,
                  std::optional<double> e0) {
  if (stages.empty()) fail("input", "run_sqc needs at least one stage");
  RunResult result;
  result.e0 = e0;
  result.best_energy = std::numeric_limits<double>::infinity();
  std::optional<BiasConfig> carry;

  for (const auto& cfg : stages) {
    try {
      run_stage(instance, cfg, carry, e0, result);
    } catch (const Error& e) {
      result.error = std::string(e.code()) + ": " + e.what();
      break;
    }
  }
  if (std::isinf(result.best_energy)) {
    result.best_energy = 0.0;
    if (!result.error) result.error = "input: no stage produced samples";
  }
  return result;
}

}  // namespace sqc
