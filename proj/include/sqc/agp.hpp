#pragma once

#include <cstdint>

#include "sqc/pauli.hpp"

namespace sqc {

// Interpolation schedule lambda(t) on [0, T] with lambda(0)=0, lambda(T)=1,
// evaluated on the midpoint grid t_k = (k - 1/2) * dt, dt = T / n_trot.
struct Schedule {
  double total_time = 1.0;
  std::uint32_t n_trot = 3;

  double dt() const { return total_time / n_trot; }
  double grid_time(std::uint32_t k) const;  // k in [1, n_trot]
  double lambda(double t) const;            // sin^2(pi t / 2T)
  double lambda_dot(double t) const;        // (pi / 2T) sin(pi t / T)
};

Schedule build_schedule(double total_time, std::uint32_t n_trot);

// First-order variational coefficient of the nested-commutator gauge
// potential A = i * alpha1 * [H_ad, dH], H_ad = (1-lambda) H_i + lambda H_f.
// Always negative. `order` is reserved; only 1 is implemented.
double alpha1(const PauliPolynomial& h_i, const PauliPolynomial& h_f,
              double lambda, std::uint32_t order = 1);

// The lambda-independent commutator core i [H_i, H_f]; Hermitian with real
// coefficients. Per-step factors alpha1(t) * lambda_dot(t) are applied when
// the circuit is built.
PauliPolynomial cd_pauli_terms(const PauliPolynomial& h_i,
                               const PauliPolynomial& h_f);

}  // namespace sqc
