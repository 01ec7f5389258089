#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqc/agp.hpp"
#include "sqc/model.hpp"
#include "sqc/pauli.hpp"

namespace sqc {

enum class GateKind : std::uint8_t { RZ, SX, X, CZ, RZZ, RX, RY, PauliRot };

const char* gate_name(GateKind k);

struct Gate {
  GateKind kind;
  std::vector<std::uint32_t> qubits;
  double angle = 0.0;       // unused for SX, X, CZ
  PauliString pauli;        // PauliRot only
  int layer = -1;           // scheduling tag, -1 = untagged
};

struct CircuitIR {
  std::uint32_t num_qubits = 0;
  std::vector<Gate> gates;
};

// Commuting-term layers: within a layer no qubit appears twice; the layers
// partition the input term set.
struct LayerSchedule {
  std::vector<std::vector<Term>> layers;

  std::size_t num_terms() const;
  bool valid() const;
};

// exp(-i theta/2 P) over the native set {X, SX, RZ, CZ} plus fractional
// RZZ/RX. Every emitted RZZ angle lies in (0, pi/2].
std::vector<Gate> decompose_pauli_rotation(const PauliString& p, double theta);

// DSATUR coloring of the conflict graph (terms conflict iff they share a
// qubit). Deterministic for a fixed term ordering; layers sorted by
// descending size.
LayerSchedule color_terms(std::vector<Term> terms);

enum class DcqoMode : std::uint8_t { CdOnly, Full };

// Bias-state preparation followed by n_trot Trotter steps of Pauli
// rotations. The h_f polynomial must contain only Z strings (it comes from
// a HuboInstance).
CircuitIR build_dcqo_circuit(const HuboInstance& h_f, const BiasConfig& bias,
                             const Schedule& schedule, DcqoMode mode);

// Rewrites every PauliRot gate through decompose_pauli_rotation.
CircuitIR lower_to_native(const CircuitIR& circuit);

// One gate per line: name qubits... [angle | pauli-label].
std::string export_circuit(const CircuitIR& circuit);

}  // namespace sqc
