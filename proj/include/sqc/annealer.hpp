#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sqc/model.hpp"

namespace sqc {

// Quadratic boolean model produced by degree reduction. Variables
// [0, num_original) are the original spins (as booleans x = (1-s)/2),
// the rest are product auxiliaries.
struct QuboInstance {
  std::uint32_t num_vars = 0;
  std::uint32_t num_original = 0;
  std::map<std::uint32_t, double> linear;
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> quadratic;
  double offset = 0.0;
  // aux variable -> the boolean pair it represents
  std::map<std::uint32_t, std::pair<std::uint32_t, std::uint32_t>> aux_map;
  double penalty = 0.0;
};

struct AnnealParams {
  std::uint32_t sweeps = 200;
  std::uint32_t restarts = 100;  // one returned sample per restart
  double t_hot = 5.0;
  double t_cold = 0.05;  // geometric schedule t_hot -> t_cold
  std::uint64_t seed = 0;
};

// Rosenberg-style reduction of cubic terms with one shared auxiliary per
// distinct variable pair. penalty <= 0 selects the automatic scale
// 2 * sum|coeffs| of the expanded boolean polynomial.
QuboInstance hubo_to_qubo(const HuboInstance& instance, double penalty = 0.0);

double qubo_energy(const QuboInstance& qubo,
                   const std::vector<std::uint8_t>& booleans);

// Drops auxiliaries and maps booleans back to spins (s = 1 - 2x).
SpinConfig decode(const QuboInstance& qubo,
                  const std::vector<std::uint8_t>& booleans);

// Seeded single-flip Metropolis annealing directly on the spin problem.
// Returns the best configuration visited in each restart.
SampleSet simulated_anneal(const HuboInstance& instance,
                           const AnnealParams& params);

// Anneals the reduced QUBO and reports decoded samples with energies
// evaluated on the original instance.
SampleSet simulated_anneal(const QuboInstance& qubo,
                           const HuboInstance& original,
                           const AnnealParams& params);

// QUBO text export: offset, linear and quadratic term lists.
void save_qubo(const QuboInstance& qubo, const std::string& path);

}  // namespace sqc
