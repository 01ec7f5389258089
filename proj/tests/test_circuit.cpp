#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "dense_oracle.hpp"
#include "sqc/circuit.hpp"
#include "sqc/error.hpp"

using namespace sqc;

namespace {

constexpr double kPi = std::numbers::pi;

double decomposition_error(const PauliString& p, double theta,
                           std::uint32_t n) {
  const auto gates = decompose_pauli_rotation(p, theta);
  oracle::Mat got = oracle::gates_to_unitary(gates, n);
  oracle::Mat expect = oracle::pauli_rotation_matrix(p, theta, n);
  return oracle::max_err_up_to_phase(got, expect);
}

void check_rzz_constraint(const std::vector<Gate>& gates) {
  for (const auto& g : gates)
    if (g.kind == GateKind::RZZ) {
      CHECK(g.angle > 0.0);
      CHECK(g.angle <= kPi / 2.0 + 1e-15);
    }
}

}  // namespace

TEST_CASE("single- and two-qubit decompositions are exact") {
  std::mt19937_64 rng(53);
  for (int rep = 0; rep < 20; ++rep) {
    const double theta = (static_cast<double>(rng() % 2001) / 1000.0 - 1.0) *
                         2.0 * kPi;
    CHECK(decomposition_error(PauliString::single(0, Pauli::Z), theta, 1) <
          1e-12);
    CHECK(decomposition_error(PauliString::single(0, Pauli::X), theta, 1) <
          1e-12);
    CHECK(decomposition_error(PauliString::single(0, Pauli::Y), theta, 1) <
          1e-12);
    CHECK(decomposition_error(PauliString({{0, Pauli::Z}, {1, Pauli::Z}}),
                              theta, 2) < 1e-12);
    CHECK(decomposition_error(PauliString({{0, Pauli::Y}, {1, Pauli::Z}}),
                              theta, 2) < 1e-12);
  }
}

TEST_CASE("rzz gates respect the fractional-angle window") {
  std::mt19937_64 rng(59);
  const PauliString zz({{0, Pauli::Z}, {1, Pauli::Z}});
  for (int rep = 0; rep < 200; ++rep) {
    const double theta = (static_cast<double>(rng() % 4001) / 1000.0 - 2.0) *
                         2.0 * kPi;
    check_rzz_constraint(decompose_pauli_rotation(zz, theta));
  }
  // exact boundary and sign cases
  check_rzz_constraint(decompose_pauli_rotation(zz, kPi / 2.0));
  check_rzz_constraint(decompose_pauli_rotation(zz, -kPi / 2.0));
  check_rzz_constraint(decompose_pauli_rotation(zz, kPi));
  CHECK(decompose_pauli_rotation(zz, 2.0 * kPi).empty());  // identity mod phase
  CHECK(decomposition_error(zz, kPi, 2) < 1e-12);
  CHECK(decomposition_error(zz, -0.3, 2) < 1e-12);
}

TEST_CASE("three-qubit mixed strings decompose correctly") {
  std::mt19937_64 rng(61);
  const PauliString samples[] = {
      PauliString({{0, Pauli::Y}, {1, Pauli::Z}, {2, Pauli::Z}}),
      PauliString({{0, Pauli::X}, {1, Pauli::Y}, {2, Pauli::Z}}),
      PauliString({{0, Pauli::Z}, {2, Pauli::X}}),
  };
  for (const auto& p : samples)
    for (int rep = 0; rep < 5; ++rep) {
      const double theta =
          (static_cast<double>(rng() % 2001) / 1000.0 - 1.0) * 2.0 * kPi;
      CHECK(decomposition_error(p, theta, 3) < 1e-10);
      check_rzz_constraint(decompose_pauli_rotation(p, theta));
    }
}

TEST_CASE("identity rotation is rejected") {
  CHECK_THROWS_AS(decompose_pauli_rotation(PauliString(), 0.5), Error);
}

TEST_CASE("coloring worked examples") {
  // two disjoint edges fit one layer
  LayerSchedule s1 = color_terms({{0, 1}, {2, 3}});
  CHECK(s1.layers.size() == 1);
  CHECK(s1.valid());
  CHECK(s1.num_terms() == 2);

  // a triangle needs three layers
  LayerSchedule s2 = color_terms({{0, 1}, {1, 2}, {0, 2}});
  CHECK(s2.layers.size() == 3);
  CHECK(s2.valid());

  // a path alternates into two layers
  LayerSchedule s3 = color_terms({{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  CHECK(s3.layers.size() == 2);
  CHECK(s3.valid());

  // duplicates collapse
  LayerSchedule s4 = color_terms({{0, 1}, {0, 1}});
  CHECK(s4.num_terms() == 1);
}

TEST_CASE("coloring is deterministic and conflict-free on random sets") {
  std::mt19937_64 rng(67);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<Term> terms;
    const std::uint32_t n = 6 + rng() % 6;
    for (int t = 0; t < 15; ++t) {
      std::set<std::uint32_t> idx;
      while (idx.size() < 2 + rng() % 2)
        idx.insert(static_cast<std::uint32_t>(rng() % n));
      terms.push_back(Term(idx.begin(), idx.end()));
    }
    LayerSchedule a = color_terms(terms);
    LayerSchedule b = color_terms(terms);
    CHECK(a.valid());
    CHECK(a.layers == b.layers);
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    CHECK(a.num_terms() == terms.size());
    // layers are ordered by descending size
    for (std::size_t i = 1; i < a.layers.size(); ++i)
      CHECK(a.layers[i - 1].size() >= a.layers[i].size());
  }
}

TEST_CASE("dcqo circuit structure for one qubit") {
  // H_f = Z0, default bias: CD core is a single Y rotation per step.
  HuboInstance inst(1);
  inst.add_term({0}, 1.0);
  BiasConfig bias = BiasConfig::uniform(1);
  Schedule sched = build_schedule(1.0, 3);

  CircuitIR circ = build_dcqo_circuit(inst, bias, sched, DcqoMode::CdOnly);
  REQUIRE(circ.num_qubits == 1);
  REQUIRE(circ.gates.size() == 4);  // 1 prep RY + 3 CD rotations
  CHECK(circ.gates[0].kind == GateKind::RY);
  // zero bias: the prep angle gives |+> up to sign of h_x
  CHECK(std::abs(std::abs(circ.gates[0].angle) - kPi / 2.0) < 1e-12);

  PauliPolynomial h_i = bias_hamiltonian(bias);
  PauliPolynomial h_f = hubo_to_pauli(inst);
  for (std::uint32_t k = 1; k <= 3; ++k) {
    const Gate& g = circ.gates[k];
    CHECK(g.kind == GateKind::PauliRot);
    CHECK(g.pauli == PauliString::single(0, Pauli::Y));
    const double t = sched.grid_time(k);
    const double lam = sched.lambda(t);
    // i [h_x X, Z] = 2 h_x Y, so c_P = -2 for h_x = -1
    const double expect = 2.0 * sched.dt() * sched.lambda_dot(t) *
                          alpha1(h_i, h_f, lam) * -2.0;
    CHECK(g.angle == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("full mode interleaves adiabatic and cd terms") {
  HuboInstance inst(2);
  inst.add_term({0}, 0.5);
  inst.add_term({0, 1}, -1.0);
  BiasConfig bias = BiasConfig::uniform(2);
  Schedule sched = build_schedule(1.0, 2);

  CircuitIR cd_only = build_dcqo_circuit(inst, bias, sched, DcqoMode::CdOnly);
  CircuitIR full = build_dcqo_circuit(inst, bias, sched, DcqoMode::Full);
  CHECK(full.gates.size() > cd_only.gates.size());

  std::size_t n_x = 0, n_z = 0;
  for (const auto& g : full.gates) {
    if (g.kind != GateKind::PauliRot) continue;
    bool has_x = false;
    for (const auto& [q, p] : g.pauli.ops())
      if (p == Pauli::X) has_x = true;
    if (has_x && g.pauli.weight() == 1) ++n_x;
    bool all_z = true;
    for (const auto& [q, p] : g.pauli.ops())
      if (p != Pauli::Z) all_z = false;
    if (all_z) ++n_z;
  }
  CHECK(n_x == 2 * 2);      // mixer X per qubit per step
  CHECK(n_z == 2 * 2);      // both cost terms per step
}

TEST_CASE("zero trotter steps leaves only the preparation layer") {
  HuboInstance inst(3);
  inst.add_term({0, 1}, 1.0);
  BiasConfig bias = BiasConfig::uniform(3);
  CircuitIR circ =
      build_dcqo_circuit(inst, bias, Schedule{1.0, 0}, DcqoMode::CdOnly);
  CHECK(circ.gates.size() == 3);
  for (const auto& g : circ.gates) CHECK(g.kind == GateKind::RY);
}

TEST_CASE("cd layers never share qubits within a layer tag") {
  HuboInstance inst(5);
  inst.add_term({0, 1}, 1.0);
  inst.add_term({1, 2}, -0.5);
  inst.add_term({2, 3, 4}, 0.75);
  inst.add_term({0}, 0.25);
  BiasConfig bias = BiasConfig::uniform(5);
  bias.h_b = {0.3, -0.2, 0.0, 0.5, -0.4};
  CircuitIR circ =
      build_dcqo_circuit(inst, bias, build_schedule(1.0, 2), DcqoMode::Full);

  // Within one layer tag, gates either act on identical supports (commuting
  // same-support strings, mixer pairs) or on disjoint qubit sets.
  std::map<int, std::vector<Term>> by_layer;
  for (const auto& g : circ.gates) {
    if (g.kind != GateKind::PauliRot) continue;
    CHECK(g.layer >= 0);
    by_layer[g.layer].push_back(g.pauli.support());
  }
  for (const auto& [tag, supports] : by_layer) {
    for (std::size_t i = 0; i < supports.size(); ++i)
      for (std::size_t j = i + 1; j < supports.size(); ++j) {
        if (supports[i] == supports[j]) continue;
        for (std::uint32_t q : supports[i])
          CHECK(std::find(supports[j].begin(), supports[j].end(), q) ==
                supports[j].end());
      }
  }
}

TEST_CASE("lowering rewrites pauli rotations and keeps layer tags") {
  HuboInstance inst(3);
  inst.add_term({0, 1, 2}, 1.0);
  BiasConfig bias = BiasConfig::uniform(3);
  CircuitIR circ =
      build_dcqo_circuit(inst, bias, build_schedule(1.0, 1), DcqoMode::CdOnly);
  CircuitIR native = lower_to_native(circ);
  for (const auto& g : native.gates) {
    CHECK(g.kind != GateKind::PauliRot);
    if (g.kind == GateKind::RZZ) {
      CHECK(g.angle > 0.0);
      CHECK(g.angle <= kPi / 2.0 + 1e-15);
    }
  }
  // the lowered circuit implements the same unitary
  oracle::Mat u1 = oracle::gates_to_unitary(circ.gates, 3);
  oracle::Mat u2 = oracle::gates_to_unitary(native.gates, 3);
  CHECK(oracle::max_err_up_to_phase(u2, u1) < 1e-10);
}

TEST_CASE("export format is stable") {
  CircuitIR circ;
  circ.num_qubits = 2;
  circ.gates.push_back({GateKind::RY, {0}, 0.5, {}, -1});
  circ.gates.push_back({GateKind::CZ, {0, 1}, 0.0, {}, -1});
  circ.gates.push_back(
      {GateKind::PauliRot, {0, 1}, 0.25,
       PauliString({{0, Pauli::Y}, {1, Pauli::Z}}), 2});
  std::string text = export_circuit(circ);
  CHECK(text.find("sqc-circuit v1 qubits 2\n") == 0);
  CHECK(text.find("ry 0 0.5\n") != std::string::npos);
  CHECK(text.find("cz 0 1\n") != std::string::npos);
  CHECK(text.find("pauli_rot 0 1 0.25 Y0 Z1\n") != std::string::npos);
}

TEST_CASE("bias mismatch is rejected") {
  HuboInstance inst(3);
  inst.add_term({0}, 1.0);
  CHECK_THROWS_AS(build_dcqo_circuit(inst, BiasConfig::uniform(2),
                                     build_schedule(1.0, 1), DcqoMode::CdOnly),
                  Error);
}
