#include "sqc/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "sqc/error.hpp"
#include "sqc/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sqc {

namespace {

using cplx = std::complex<double>;

struct PauliMasks {
  std::uint64_t x_mask = 0;   // sites with X or Y: flip the bit
  std::uint64_t zy_mask = 0;  // sites with Z or Y: sign (-1)^bit
  cplx y_phase = 1.0;         // i^(#Y)
};

PauliMasks masks_for(const PauliString& p, std::uint32_t n) {
  PauliMasks m;
  int ny = 0;
  for (const auto& [q, letter] : p.ops()) {
    if (q >= n) fail("dimension", "Pauli support outside register");
    std::uint64_t bit = std::uint64_t{1} << q;
    switch (letter) {
      case Pauli::X: m.x_mask |= bit; break;
      case Pauli::Y: m.x_mask |= bit; m.zy_mask |= bit; ++ny; break;
      case Pauli::Z: m.zy_mask |= bit; break;
    }
  }
  static const cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  m.y_phase = i_pow[ny % 4];
  return m;
}

inline double sign_of(std::uint64_t bits, std::uint64_t mask) {
  return (std::popcount(bits & mask) & 1) ? -1.0 : 1.0;
}

constexpr std::uint64_t kReduceChunks = 256;

// Fixed-chunk reduction so sums do not depend on the thread count.
template <typename F>
double chunked_sum(std::uint64_t dim, F&& per_index) {
  const std::uint64_t chunks = std::min<std::uint64_t>(dim, kReduceChunks);
  const std::uint64_t step = dim / chunks;
  std::vector<double> partial(chunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    std::uint64_t begin = static_cast<std::uint64_t>(c) * step;
    std::uint64_t end =
        (c + 1 == static_cast<std::int64_t>(chunks)) ? dim : begin + step;
    double s = 0.0;
    for (std::uint64_t i = begin; i < end; ++i) s += per_index(i);
    partial[c] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

}  // namespace

StateVector::StateVector(std::uint32_t num_qubits) : n_(num_qubits) {
  if (n_ == 0) fail("input", "statevector needs at least one qubit");
  if (n_ > kMaxQubits)
    fail("capacity", "statevector capped at " + std::to_string(kMaxQubits) +
                         " qubits");
  amps_.assign(dim(), cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

double StateVector::norm() const {
  return std::sqrt(
      chunked_sum(dim(), [this](std::uint64_t i) { return std::norm(amps_[i]); }));
}

double bias_prep_angle(double h_x, double h_b) {
  if (h_x == 0.0) fail("input", "h_x must be nonzero");
  if (!std::isfinite(h_x) || !std::isfinite(h_b))
    fail("input", "bias fields must be finite");
  double lambda_min = -std::sqrt(h_b * h_b + h_x * h_x);
  return 2.0 * std::atan((h_b + lambda_min) / h_x);
}

StateVector prepare_bias_state(const BiasConfig& bias) {
  StateVector state(bias.size());
  for (std::uint32_t j = 0; j < bias.size(); ++j)
    apply_ry(state, j, bias_prep_angle(bias.h_x[j], bias.h_b[j]));
  return state;
}

void apply_pauli_rotation(StateVector& state, const PauliString& p,
                          double theta) {
  const auto m = masks_for(p, state.num_qubits());
  const double c = std::cos(theta / 2.0);
  const cplx mis(0.0, -std::sin(theta / 2.0));  // -i sin(theta/2)
  const std::uint64_t dim = state.dim();

  if (m.x_mask == 0) {
    // diagonal: amp *= cos - i sin * (+-1)
    const cplx f_plus = c + mis;
    const cplx f_minus = c - mis;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(dim); ++b) {
      state.amp(b) *= sign_of(b, m.zy_mask) > 0 ? f_plus : f_minus;
    }
    return;
  }

  const std::uint64_t pivot = m.x_mask & (~m.x_mask + 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t sb = 0; sb < static_cast<std::int64_t>(dim); ++sb) {
    const std::uint64_t b = static_cast<std::uint64_t>(sb);
    if (b & pivot) continue;  // partner handles this pair
    const std::uint64_t b2 = b ^ m.x_mask;
    const cplx f_b = m.y_phase * sign_of(b, m.zy_mask);    // P|b> = f_b|b2>
    const cplx f_b2 = m.y_phase * sign_of(b2, m.zy_mask);  // P|b2> = f_b2|b>
    const cplx a = state.amp(b);
    const cplx a2 = state.amp(b2);
    state.amp(b) = c * a + mis * f_b2 * a2;
    state.amp(b2) = c * a2 + mis * f_b * a;
  }
}

void apply_1q(StateVector& state, std::uint32_t q, const cplx u[4]) {
  if (q >= state.num_qubits()) fail("dimension", "qubit index out of range");
  const std::uint64_t bit = std::uint64_t{1} << q;
  const std::uint64_t dim = state.dim();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t sb = 0; sb < static_cast<std::int64_t>(dim); ++sb) {
    const std::uint64_t b = static_cast<std::uint64_t>(sb);
    if (b & bit) continue;
    const cplx a0 = state.amp(b);
    const cplx a1 = state.amp(b | bit);
    state.amp(b) = u[0] * a0 + u[1] * a1;
    state.amp(b | bit) = u[2] * a0 + u[3] * a1;
  }
}

void apply_rx(StateVector& state, std::uint32_t q, double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  const cplx u[4] = {{c, 0}, {0, -s}, {0, -s}, {c, 0}};
  apply_1q(state, q, u);
}

void apply_ry(StateVector& state, std::uint32_t q, double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  const cplx u[4] = {{c, 0}, {-s, 0}, {s, 0}, {c, 0}};
  apply_1q(state, q, u);
}

void apply_rz(StateVector& state, std::uint32_t q, double theta) {
  const cplx e0 = std::polar(1.0, -theta / 2.0);
  const cplx e1 = std::polar(1.0, theta / 2.0);
  const cplx u[4] = {e0, {0, 0}, {0, 0}, e1};
  apply_1q(state, q, u);
}

void apply_sx(StateVector& state, std::uint32_t q) {
  const cplx u[4] = {{0.5, 0.5}, {0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}};
  apply_1q(state, q, u);
}

void apply_x(StateVector& state, std::uint32_t q) {
  const cplx u[4] = {{0, 0}, {1, 0}, {1, 0}, {0, 0}};
  apply_1q(state, q, u);
}

void apply_cz(StateVector& state, std::uint32_t a, std::uint32_t b) {
  if (a >= state.num_qubits() || b >= state.num_qubits() || a == b)
    fail("dimension", "bad CZ qubits");
  const std::uint64_t both =
      (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
  const std::uint64_t dim = state.dim();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(dim); ++i) {
    if ((static_cast<std::uint64_t>(i) & both) == both) state.amp(i) = -state.amp(i);
  }
}

void apply_rzz(StateVector& state, std::uint32_t a, std::uint32_t b,
               double theta) {
  if (a >= state.num_qubits() || b >= state.num_qubits() || a == b)
    fail("dimension", "bad RZZ qubits");
  const std::uint64_t ba = std::uint64_t{1} << a;
  const std::uint64_t bb = std::uint64_t{1} << b;
  const cplx f_same = std::polar(1.0, -theta / 2.0);
  const cplx f_diff = std::polar(1.0, theta / 2.0);
  const std::uint64_t dim = state.dim();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(dim); ++i) {
    bool same = ((i & ba) != 0) == ((i & bb) != 0);
    state.amp(i) *= same ? f_same : f_diff;
  }
}

void run_circuit(StateVector& state, const CircuitIR& circuit) {
  if (circuit.num_qubits != state.num_qubits())
    fail("dimension", "circuit/state size mismatch");
  for (const auto& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::RZ: apply_rz(state, g.qubits[0], g.angle); break;
      case GateKind::SX: apply_sx(state, g.qubits[0]); break;
      case GateKind::X: apply_x(state, g.qubits[0]); break;
      case GateKind::CZ: apply_cz(state, g.qubits[0], g.qubits[1]); break;
      case GateKind::RZZ:
        apply_rzz(state, g.qubits[0], g.qubits[1], g.angle);
        break;
      case GateKind::RX: apply_rx(state, g.qubits[0], g.angle); break;
      case GateKind::RY: apply_ry(state, g.qubits[0], g.angle); break;
      case GateKind::PauliRot:
        apply_pauli_rotation(state, g.pauli, g.angle);
        break;
    }
  }
}

SampleSet sample(const StateVector& state, const HuboInstance& instance,
                 std::uint64_t n_shots, std::uint64_t seed) {
  if (n_shots < 1) fail("input", "n_shots must be at least 1");
  if (instance.num_spins() != state.num_qubits())
    fail("dimension", "instance/state size mismatch");
  const std::uint64_t dim = state.dim();

  std::vector<double> cdf(dim);
  double acc = 0.0;
  for (std::uint64_t i = 0; i < dim; ++i) {
    acc += std::norm(state.amp(i));
    cdf[i] = acc;
  }

  std::mt19937_64 rng(seed);
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t s = 0; s < n_shots; ++s) {
    double u = uniform01(rng) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::uint64_t idx =
        it == cdf.end() ? dim - 1 : static_cast<std::uint64_t>(it - cdf.begin());
    ++counts[idx];
  }

  SampleSet out;
  out.num_spins = state.num_qubits();
  out.total_shots = n_shots;
  out.entries.reserve(counts.size());
  for (const auto& [idx, mult] : counts) {
    SpinConfig cfg = SpinConfig::from_bits(idx, out.num_spins);
    out.entries.push_back({cfg.to_bitstring(), mult, energy(instance, cfg)});
  }
  return out;
}

double expectation_z(const StateVector& state, std::uint32_t j) {
  if (j >= state.num_qubits()) fail("dimension", "qubit index out of range");
  const std::uint64_t bit = std::uint64_t{1} << j;
  return chunked_sum(state.dim(), [&](std::uint64_t i) {
    double p = std::norm(state.amp(i));
    return (i & bit) ? -p : p;
  });
}

namespace ref {

void apply_pauli_rotation(StateVector& state, const PauliString& p,
                          double theta) {
  const auto m = masks_for(p, state.num_qubits());
  const double c = std::cos(theta / 2.0);
  const cplx mis(0.0, -std::sin(theta / 2.0));
  const std::uint64_t dim = state.dim();
  std::vector<cplx> out(dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    const std::uint64_t src = b ^ m.x_mask;
    const cplx f = m.y_phase * sign_of(src, m.zy_mask);  // <b|P|src>
    out[b] = c * state.amp(b) + mis * f * state.amp(src);
  }
  for (std::uint64_t b = 0; b < dim; ++b) state.amp(b) = out[b];
}

void apply_1q(StateVector& state, std::uint32_t q, const cplx u[4]) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  const std::uint64_t dim = state.dim();
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (b & bit) continue;
    const cplx a0 = state.amp(b);
    const cplx a1 = state.amp(b | bit);
    state.amp(b) = u[0] * a0 + u[1] * a1;
    state.amp(b | bit) = u[2] * a0 + u[3] * a1;
  }
}

double expectation_z(const StateVector& state, std::uint32_t j) {
  const std::uint64_t bit = std::uint64_t{1} << j;
  double s = 0.0;
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    double p = std::norm(state.amp(i));
    s += (i & bit) ? -p : p;
  }
  return s;
}

}  // namespace ref

}  // namespace sqc
