#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sqc {

// Index tuple of a Hamiltonian term, strictly ascending.
using Term = std::vector<std::uint32_t>;

// Coefficient alphabet of the spin-glass instances: an 8-element Sidon set.
inline constexpr std::array<double, 8> kSidonSet = {
    8.0 / 28.0,  -8.0 / 28.0,  13.0 / 28.0, -13.0 / 28.0,
    19.0 / 28.0, -19.0 / 28.0, 1.0,         -1.0};

// Higher-order Ising cost function H = sum_t c_t * prod_{i in t} s_i with
// s_i in {+1,-1}. Terms of any arity; zero coefficients are never stored.
class HuboInstance {
public:
  HuboInstance() = default;
  explicit HuboInstance(std::uint32_t num_spins) : num_spins_(num_spins) {}

  std::uint32_t num_spins() const { return num_spins_; }
  const std::map<Term, double>& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  std::uint32_t max_arity() const;

  // Validates the tuple (sorted, strictly ascending, in range) and
  // accumulates onto any existing coefficient; exact zeros are erased.
  void add_term(const Term& indices, double coeff);

  std::size_t count_terms_of_arity(std::uint32_t k) const;

private:
  std::uint32_t num_spins_ = 0;
  std::map<Term, double> terms_;
};

// Spin configuration; the project-wide bit convention is
// bit 0 <-> spin +1, bit 1 <-> spin -1 (sigma^z|0> = +|0>).
struct SpinConfig {
  std::vector<std::int8_t> spins;  // +1 / -1

  std::size_t size() const { return spins.size(); }

  static SpinConfig from_bitstring(const std::string& bits);
  // bit j of `bits` is the measured bit of spin j
  static SpinConfig from_bits(std::uint64_t bits, std::uint32_t n);
  std::string to_bitstring() const;  // character j = bit of spin j
  std::uint64_t to_bits() const;     // valid for size <= 64
};

struct SampleEntry {
  std::string bitstring;  // character j = measured bit of spin j
  std::uint64_t multiplicity = 0;
  double energy = 0.0;
};

// Measured bitstrings with multiplicities; the currency passed between
// solver stages.
struct SampleSet {
  std::uint32_t num_spins = 0;
  std::vector<SampleEntry> entries;
  std::uint64_t total_shots = 0;

  bool empty() const { return entries.empty(); }
  void sort_by_energy();  // ascending, ties by bitstring
  double min_energy() const;
  const SampleEntry& best() const;
};

struct CouplingMap {
  std::uint32_t num_nodes = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;    // sorted pairs
  std::vector<std::array<std::uint32_t, 3>> triples;             // sorted
};

double energy(const HuboInstance& instance, const SpinConfig& config);

// Ground state by exhaustive enumeration; ties broken by the smallest
// bitstring value. Capacity-limited to 26 spins.
std::pair<SpinConfig, double> brute_force_ground(const HuboInstance& instance);

// Mean of the ceil(alpha * n_shots) lowest energies, multiplicity-weighted.
double cvar_energy(const SampleSet& samples, double alpha);

// E(alpha) / e0; requires e0 < 0.
double approximation_ratio(const SampleSet& samples, double e0, double alpha);

// One coefficient per node, edge and triple, drawn from the Sidon set.
HuboInstance generate_sidon_instance(const CouplingMap& map, std::uint64_t seed);

// Edge-list file: one "i j" pair per line, '#' comments. Triples are not
// part of the file; call derive_triples.
CouplingMap load_coupling_map(const std::string& path);

// Adds every sorted 3-set {i,j,k} whose induced subgraph contains a path of
// length 2 (at least two of the three pairs are edges).
void derive_triples(CouplingMap& map);

// Instance file format (text, round-trip exact):
//   sqc-hubo v1
//   spins <N>
//   <i1> <i2> ... <ik> : <coeff>
// Coefficients that are exactly k/28 are written as fractions, everything
// else as 17-significant-digit decimals.
void save_instance(const HuboInstance& instance, const std::string& path);
HuboInstance load_instance(const std::string& path);
std::string format_coefficient(double value);

void save_samples_csv(const SampleSet& samples, const std::string& path);

// Per-spin fields of the initial Hamiltonian sum_j (h^x_j X_j - h^b_j Z_j).
// h^b carries the inter-stage bias information.
struct BiasConfig {
  std::vector<double> h_x;  // transverse fields, default -1
  std::vector<double> h_b;  // bias fields, default 0

  static BiasConfig uniform(std::uint32_t n) {
    return {std::vector<double>(n, -1.0), std::vector<double>(n, 0.0)};
  }
  std::uint32_t size() const { return static_cast<std::uint32_t>(h_x.size()); }
};

}  // namespace sqc
