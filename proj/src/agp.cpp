#include "sqc/agp.hpp"

#include <cmath>
#include <numbers>

#include "sqc/error.hpp"

namespace sqc {

double Schedule::grid_time(std::uint32_t k) const {
  if (k < 1 || k > n_trot) fail("input", "Trotter index out of range");
  return (static_cast<double>(k) - 0.5) * dt();
}

double Schedule::lambda(double t) const {
  double s = std::sin(std::numbers::pi * t / (2.0 * total_time));
  return s * s;
}

double Schedule::lambda_dot(double t) const {
  return std::numbers::pi / (2.0 * total_time) *
         std::sin(std::numbers::pi * t / total_time);
}

Schedule build_schedule(double total_time, std::uint32_t n_trot) {
  if (!(total_time > 0.0)) fail("input", "total_time must be positive");
  if (n_trot < 1) fail("input", "n_trot must be at least 1");
  return Schedule{total_time, n_trot};
}

double alpha1(const PauliPolynomial& h_i, const PauliPolynomial& h_f,
              double lambda, std::uint32_t order) {
  if (order != 1) fail("unsupported", "only first-order AGP is implemented");
  PauliPolynomial h_ad = (1.0 - lambda) * h_i + lambda * h_f;
  PauliPolynomial dh = h_f;
  dh -= h_i;
  PauliPolynomial o1 = commutator(h_ad, dh);
  PauliPolynomial o2 = commutator(h_ad, o1);
  double denom = hs_norm_sq(o2);
  if (denom < 1e-24) fail("degenerate", "vanishing O2 norm in alpha1");
  return -hs_norm_sq(o1) / denom;
}

PauliPolynomial cd_pauli_terms(const PauliPolynomial& h_i,
                               const PauliPolynomial& h_f) {
  PauliPolynomial core = commutator(h_i, h_f);
  return std::complex<double>(0.0, 1.0) * core;
}

}  // namespace sqc
