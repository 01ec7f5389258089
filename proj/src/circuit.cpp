#include "sqc/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>

#include "sqc/error.hpp"
#include "sqc/simulator.hpp"

namespace sqc {

namespace {
constexpr double kPi = std::numbers::pi;
}

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::RZ: return "rz";
    case GateKind::SX: return "sx";
    case GateKind::X: return "x";
    case GateKind::CZ: return "cz";
    case GateKind::RZZ: return "rzz";
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::PauliRot: return "pauli_rot";
  }
  return "?";
}

std::size_t LayerSchedule::num_terms() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.size();
  return n;
}

bool LayerSchedule::valid() const {
  for (const auto& layer : layers) {
    std::set<std::uint32_t> used;
    for (const auto& term : layer)
      for (std::uint32_t q : term)
        if (!used.insert(q).second) return false;
  }
  return true;
}

namespace {

void emit_h(std::vector<Gate>& gates, std::uint32_t q) {
  // H = RZ(pi/2) SX RZ(pi/2) up to global phase
  gates.push_back({GateKind::RZ, {q}, kPi / 2.0, {}, -1});
  gates.push_back({GateKind::SX, {q}, 0.0, {}, -1});
  gates.push_back({GateKind::RZ, {q}, kPi / 2.0, {}, -1});
}

void emit_cnot(std::vector<Gate>& gates, std::uint32_t control,
               std::uint32_t target) {
  emit_h(gates, target);
  gates.push_back({GateKind::CZ, {control, target}, 0.0, {}, -1});
  emit_h(gates, target);
}

// RZZ with the fractional-gate constraint 0 < theta <= pi/2. Larger or
// negative angles are rewritten with X conjugation and angle splitting.
void emit_rzz(std::vector<Gate>& gates, std::uint32_t a, std::uint32_t b,
              double theta) {
  double r = std::remainder(theta, 2.0 * kPi);  // (-pi, pi], phase dropped
  if (r == 0.0) return;
  if (r < 0.0) {
    // X_a RZZ(phi) X_a = RZZ(-phi)
    gates.push_back({GateKind::X, {a}, 0.0, {}, -1});
    emit_rzz(gates, a, b, -r);
    gates.push_back({GateKind::X, {a}, 0.0, {}, -1});
    return;
  }
  if (r > kPi / 2.0) {
    gates.push_back({GateKind::RZZ, {a, b}, kPi / 2.0, {}, -1});
    r -= kPi / 2.0;
    if (r <= 0.0) return;
  }
  gates.push_back({GateKind::RZZ, {a, b}, r, {}, -1});
}

}  // namespace

std::vector<Gate> decompose_pauli_rotation(const PauliString& p, double theta) {
  if (p.is_identity()) fail("input", "cannot decompose identity rotation");
  std::vector<Gate> gates;

  if (p.weight() == 1 && p.ops()[0].second == Pauli::Z) {
    gates.push_back({GateKind::RZ, {p.ops()[0].first}, theta, {}, -1});
    return gates;
  }
  if (p.weight() == 2 && p.ops()[0].second == Pauli::Z &&
      p.ops()[1].second == Pauli::Z) {
    emit_rzz(gates, p.ops()[0].first, p.ops()[1].first, theta);
    return gates;
  }

  // Basis change mapping every site to Z, parity ladder onto the last
  // support qubit, RZ, then everything inverted.
  for (const auto& [q, letter] : p.ops()) {
    if (letter == Pauli::X) {
      emit_h(gates, q);
    } else if (letter == Pauli::Y) {
      gates.push_back({GateKind::RZ, {q}, -kPi / 2.0, {}, -1});  // S^dag
      emit_h(gates, q);
    }
  }
  const auto& ops = p.ops();
  for (std::size_t i = 0; i + 1 < ops.size(); ++i)
    emit_cnot(gates, ops[i].first, ops[i + 1].first);
  gates.push_back({GateKind::RZ, {ops.back().first}, theta, {}, -1});
  for (std::size_t i = ops.size() - 1; i-- > 0;)
    emit_cnot(gates, ops[i].first, ops[i + 1].first);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    if (it->second == Pauli::X) {
      emit_h(gates, it->first);
    } else if (it->second == Pauli::Y) {
      emit_h(gates, it->first);
      gates.push_back({GateKind::RZ, {it->first}, kPi / 2.0, {}, -1});  // S
    }
  }
  return gates;
}

LayerSchedule color_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  const std::size_t n = terms.size();

  std::vector<std::vector<std::uint32_t>> conflicts(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool shared = false;
      for (std::uint32_t q : terms[i])
        if (std::find(terms[j].begin(), terms[j].end(), q) != terms[j].end()) {
          shared = true;
          break;
        }
      if (shared) {
        conflicts[i].push_back(static_cast<std::uint32_t>(j));
        conflicts[j].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }

  std::vector<int> color(n, -1);
  std::vector<std::set<int>> saturation(n);
  int num_colors = 0;
  for (std::size_t step = 0; step < n; ++step) {
    // highest saturation, then highest degree, then lowest index
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (color[i] != -1) continue;
      if (pick == n ||
          std::make_tuple(saturation[i].size(), conflicts[i].size(),
                          n - i) >
              std::make_tuple(saturation[pick].size(), conflicts[pick].size(),
                              n - pick))
        pick = i;
    }
    int c = 0;
    while (saturation[pick].count(c)) ++c;
    color[pick] = c;
    num_colors = std::max(num_colors, c + 1);
    for (std::uint32_t nb : conflicts[pick]) saturation[nb].insert(c);
  }

  std::vector<std::vector<Term>> buckets(num_colors);
  for (std::size_t i = 0; i < n; ++i) buckets[color[i]].push_back(terms[i]);

  // descending size, stable on the original color index
  std::vector<std::size_t> order(buckets.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return buckets[a].size() > buckets[b].size();
  });

  LayerSchedule out;
  for (std::size_t i : order) out.layers.push_back(std::move(buckets[i]));
  return out;
}

CircuitIR build_dcqo_circuit(const HuboInstance& h_f, const BiasConfig& bias,
                             const Schedule& schedule, DcqoMode mode) {
  const std::uint32_t n = h_f.num_spins();
  if (bias.size() != n) fail("dimension", "bias/instance size mismatch");

  CircuitIR circ;
  circ.num_qubits = n;
  for (std::uint32_t j = 0; j < n; ++j)
    circ.gates.push_back(
        {GateKind::RY, {j}, bias_prep_angle(bias.h_x[j], bias.h_b[j]), {}, -1});
  if (schedule.n_trot == 0) return circ;

  const PauliPolynomial h_i = bias_hamiltonian(bias);
  const PauliPolynomial h_f_poly = hubo_to_pauli(h_f);
  const PauliPolynomial cd_core = cd_pauli_terms(h_i, h_f_poly);

  // Group CD strings by support and schedule supports into disjoint layers;
  // same-support strings commute (one Y against the rest Z).
  std::map<Term, std::vector<std::pair<PauliString, double>>> by_support;
  for (const auto& [s, c] : cd_core.terms())
    by_support[s.support()].push_back({s, c.real()});
  std::vector<Term> cd_supports;
  for (const auto& [t, v] : by_support) cd_supports.push_back(t);
  const LayerSchedule cd_layers = color_terms(cd_supports);

  std::vector<Term> hf_supports;
  for (const auto& [t, c] : h_f.terms()) hf_supports.push_back(t);
  const LayerSchedule hf_layers = color_terms(hf_supports);

  const double dt = schedule.dt();
  int layer_tag = 0;
  for (std::uint32_t k = 1; k <= schedule.n_trot; ++k) {
    const double t = schedule.grid_time(k);
    const double lam = schedule.lambda(t);
    const double lam_dot = schedule.lambda_dot(t);

    if (mode == DcqoMode::Full) {
      // exp(-i dt H_ad(lambda)): the one-body mixer/bias part in one layer,
      // then the cost terms layer by layer.
      for (std::uint32_t j = 0; j < n; ++j) {
        double cx = (1.0 - lam) * bias.h_x[j];
        if (cx != 0.0)
          circ.gates.push_back({GateKind::PauliRot, {j}, 2.0 * dt * cx,
                                PauliString::single(j, Pauli::X), layer_tag});
        double cz = -(1.0 - lam) * bias.h_b[j];
        if (cz != 0.0)
          circ.gates.push_back({GateKind::PauliRot, {j}, 2.0 * dt * cz,
                                PauliString::single(j, Pauli::Z), layer_tag});
      }
      ++layer_tag;
      for (const auto& layer : hf_layers.layers) {
        for (const auto& term : layer) {
          std::vector<std::pair<std::uint32_t, Pauli>> ops;
          for (std::uint32_t q : term) ops.push_back({q, Pauli::Z});
          double c = h_f.terms().at(term);
          circ.gates.push_back({GateKind::PauliRot, term,
                                2.0 * dt * lam * c, PauliString(ops),
                                layer_tag});
        }
        ++layer_tag;
      }
    }

    const double a1 = alpha1(h_i, h_f_poly, lam);
    for (const auto& layer : cd_layers.layers) {
      for (const auto& term : layer) {
        for (const auto& [s, c] : by_support.at(term)) {
          circ.gates.push_back({GateKind::PauliRot, term,
                                2.0 * dt * lam_dot * a1 * c, s, layer_tag});
        }
      }
      ++layer_tag;
    }
  }
  return circ;
}

CircuitIR lower_to_native(const CircuitIR& circuit) {
  CircuitIR out;
  out.num_qubits = circuit.num_qubits;
  for (const auto& g : circuit.gates) {
    if (g.kind != GateKind::PauliRot) {
      out.gates.push_back(g);
      continue;
    }
    auto lowered = decompose_pauli_rotation(g.pauli, g.angle);
    for (auto& lg : lowered) {
      lg.layer = g.layer;
      out.gates.push_back(std::move(lg));
    }
  }
  return out;
}

std::string export_circuit(const CircuitIR& circuit) {
  std::ostringstream out;
  out << "sqc-circuit v1 qubits " << circuit.num_qubits << "\n";
  char buf[64];
  for (const auto& g : circuit.gates) {
    out << gate_name(g.kind);
    for (std::uint32_t q : g.qubits) out << " " << q;
    switch (g.kind) {
      case GateKind::RZ:
      case GateKind::RZZ:
      case GateKind::RX:
      case GateKind::RY:
        std::snprintf(buf, sizeof(buf), " %.17g", g.angle);
        out << buf;
        break;
      case GateKind::PauliRot:
        std::snprintf(buf, sizeof(buf), " %.17g", g.angle);
        out << buf << " " << g.pauli.label();
        break;
      default:
        break;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace sqc
