#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "sqc/circuit.hpp"
#include "sqc/model.hpp"
#include "sqc/pauli.hpp"

namespace sqc {

// Dense statevector, qubit j <-> bit j of the amplitude index.
// Capacity-capped at 24 qubits (256 MB of amplitudes).
class StateVector {
public:
  static constexpr std::uint32_t kMaxQubits = 24;

  explicit StateVector(std::uint32_t num_qubits);  // |0...0>

  std::uint32_t num_qubits() const { return n_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_; }
  std::complex<double>& amp(std::uint64_t i) { return amps_[i]; }
  const std::complex<double>& amp(std::uint64_t i) const { return amps_[i]; }
  const std::vector<std::complex<double>>& amps() const { return amps_; }

  double norm() const;

private:
  std::uint32_t n_;
  std::vector<std::complex<double>> amps_;
};

// RY angle preparing the ground state of h_x X - h_b Z on one site.
double bias_prep_angle(double h_x, double h_b);

// Product state (x)_j RY(theta_j)|0>, the ground state of the bias
// Hamiltonian sum_j (h^x_j X_j - h^b_j Z_j).
StateVector prepare_bias_state(const BiasConfig& bias);

// state <- exp(-i theta/2 P) state
void apply_pauli_rotation(StateVector& state, const PauliString& p,
                          double theta);

void apply_rx(StateVector& state, std::uint32_t q, double theta);
void apply_ry(StateVector& state, std::uint32_t q, double theta);
void apply_rz(StateVector& state, std::uint32_t q, double theta);
void apply_sx(StateVector& state, std::uint32_t q);
void apply_x(StateVector& state, std::uint32_t q);
void apply_cz(StateVector& state, std::uint32_t a, std::uint32_t b);
void apply_rzz(StateVector& state, std::uint32_t a, std::uint32_t b,
               double theta);
// Arbitrary single-qubit unitary, row-major [u00 u01; u10 u11].
void apply_1q(StateVector& state, std::uint32_t q,
              const std::complex<double> u[4]);

// Executes a circuit IR gate by gate; PauliRot gates are applied directly
// without lowering.
void run_circuit(StateVector& state, const CircuitIR& circuit);

// Inverse-CDF sampling over a fixed amplitude ordering; byte-identical
// output for identical (state, shots, seed). Energies are evaluated on
// `instance`.
SampleSet sample(const StateVector& state, const HuboInstance& instance,
                 std::uint64_t n_shots, std::uint64_t seed);

double expectation_z(const StateVector& state, std::uint32_t j);

// Serial reference kernels, kept for correctness tests and the benchmark.
namespace ref {
void apply_pauli_rotation(StateVector& state, const PauliString& p,
                          double theta);
void apply_1q(StateVector& state, std::uint32_t q,
              const std::complex<double> u[4]);
double expectation_z(const StateVector& state, std::uint32_t j);
}  // namespace ref

}  // namespace sqc
