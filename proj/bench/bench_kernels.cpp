// Timing comparison of the parallel simulator kernels against the serial
// reference implementations, plus the annealer restart loop.

#include <chrono>
#include <cstdio>
#include <random>

#include "sqc/annealer.hpp"
#include "sqc/model.hpp"
#include "sqc/simulator.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace sqc;

namespace {

double now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

StateVector random_state(std::uint32_t n, std::mt19937_64& rng) {
  StateVector s(n);
  double norm2 = 0.0;
  for (std::uint64_t i = 0; i < s.dim(); ++i) {
    s.amp(i) = {static_cast<double>(rng() % 2001) / 1000.0 - 1.0,
                static_cast<double>(rng() % 2001) / 1000.0 - 1.0};
    norm2 += std::norm(s.amp(i));
  }
  for (std::uint64_t i = 0; i < s.dim(); ++i) s.amp(i) /= std::sqrt(norm2);
  return s;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx\n",
              name, serial * 1e3, parallel * 1e3, serial / parallel);
}

}  // namespace

int main() {
  const std::uint32_t n = 20;
  const int reps = 20;
  std::mt19937_64 rng(1);

#ifdef _OPENMP
  std::printf("qubits: %u, repetitions: %d, threads: %d\n", n, reps,
              omp_get_max_threads());
#else
  std::printf("qubits: %u, repetitions: %d, threads: 1 (no OpenMP)\n", n,
              reps);
#endif

  StateVector base = random_state(n, rng);
  PauliString heavy({{2, Pauli::Y}, {7, Pauli::Z}, {12, Pauli::Z},
                     {17, Pauli::X}});
  PauliString diag({{3, Pauli::Z}, {9, Pauli::Z}, {15, Pauli::Z}});

  {
    StateVector a = base;
    double t0 = now();
    for (int r = 0; r < reps; ++r) ref::apply_pauli_rotation(a, heavy, 0.137);
    double serial = now() - t0;
    StateVector b = base;
    t0 = now();
    for (int r = 0; r < reps; ++r) apply_pauli_rotation(b, heavy, 0.137);
    report("pauli rotation (mixed)", serial, now() - t0);
  }

  {
    StateVector a = base;
    double t0 = now();
    for (int r = 0; r < reps; ++r) ref::apply_pauli_rotation(a, diag, 0.137);
    double serial = now() - t0;
    StateVector b = base;
    t0 = now();
    for (int r = 0; r < reps; ++r) apply_pauli_rotation(b, diag, 0.137);
    report("pauli rotation (diagonal)", serial, now() - t0);
  }

  {
    const std::complex<double> u[4] = {
        {0.6, 0.0}, {0.0, 0.8}, {0.0, 0.8}, {0.6, 0.0}};
    StateVector a = base;
    double t0 = now();
    for (int r = 0; r < reps; ++r) ref::apply_1q(a, 10, u);
    double serial = now() - t0;
    StateVector b = base;
    t0 = now();
    for (int r = 0; r < reps; ++r) apply_1q(b, 10, u);
    report("single-qubit gate", serial, now() - t0);
  }

  {
    double acc = 0.0;
    double t0 = now();
    for (int r = 0; r < reps; ++r) acc += ref::expectation_z(base, 5);
    double serial = now() - t0;
    t0 = now();
    for (int r = 0; r < reps; ++r) acc -= expectation_z(base, 5);
    double parallel = now() - t0;
    report("expectation <Z>", serial, parallel);
    if (std::abs(acc) > 1e-9) std::printf("kernel mismatch: %g\n", acc);
  }

  {
    // the annealer parallelizes over restarts
    std::mt19937_64 g(7);
    CouplingMap map;
    map.num_nodes = 24;
    for (std::uint32_t i = 0; i < 24; ++i)
      for (std::uint32_t j = i + 1; j < 24; ++j)
        if (g() % 4 == 0) map.edges.push_back({i, j});
    derive_triples(map);
    HuboInstance inst = generate_sidon_instance(map, 7);

    AnnealParams params;
    params.restarts = 1;
    params.sweeps = 400;
    double t0 = now();
    for (int r = 0; r < 64; ++r) {
      params.seed = static_cast<std::uint64_t>(r);
      simulated_anneal(inst, params);
    }
    double serial = now() - t0;
    params.restarts = 64;
    params.seed = 0;
    t0 = now();
    simulated_anneal(inst, params);
    report("annealer (64 restarts)", serial, now() - t0);
  }

  return 0;
}
