#pragma once

// Dense linear-algebra oracle used only by tests. Everything here is built
// from first principles (explicit matrices, textbook formulas) so it is
// independent of the sparse Pauli machinery under test.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "sqc/circuit.hpp"
#include "sqc/pauli.hpp"

namespace oracle {

using cplx = std::complex<double>;

// Row-major square matrix.
struct Mat {
  std::uint64_t dim = 0;
  std::vector<cplx> a;

  explicit Mat(std::uint64_t d) : dim(d), a(d * d, cplx{0, 0}) {}
  cplx& at(std::uint64_t r, std::uint64_t c) { return a[r * dim + c]; }
  const cplx& at(std::uint64_t r, std::uint64_t c) const {
    return a[r * dim + c];
  }
};

inline Mat identity(std::uint64_t d) {
  Mat m(d);
  for (std::uint64_t i = 0; i < d; ++i) m.at(i, i) = 1.0;
  return m;
}

inline Mat matmul(const Mat& x, const Mat& y) {
  Mat out(x.dim);
  for (std::uint64_t r = 0; r < x.dim; ++r)
    for (std::uint64_t k = 0; k < x.dim; ++k) {
      const cplx v = x.at(r, k);
      if (v == cplx{0, 0}) continue;
      for (std::uint64_t c = 0; c < x.dim; ++c) out.at(r, c) += v * y.at(k, c);
    }
  return out;
}

inline Mat add(const Mat& x, const Mat& y, cplx sy = 1.0) {
  Mat out = x;
  for (std::uint64_t i = 0; i < x.a.size(); ++i) out.a[i] += sy * y.a[i];
  return out;
}

inline Mat scale(const Mat& x, cplx s) {
  Mat out = x;
  for (auto& v : out.a) v *= s;
  return out;
}

inline Mat commutator(const Mat& x, const Mat& y) {
  return add(matmul(x, y), matmul(y, x), -1.0);
}

inline cplx trace(const Mat& x) {
  cplx t = 0.0;
  for (std::uint64_t i = 0; i < x.dim; ++i) t += x.at(i, i);
  return t;
}

// P|b> = i^{#Y} (-1)^{popcount(b & zy)} |b ^ x>, qubit j <-> bit j.
inline Mat pauli_matrix(const sqc::PauliString& p, std::uint32_t n) {
  std::uint64_t x_mask = 0, zy_mask = 0;
  int ny = 0;
  for (const auto& [q, letter] : p.ops()) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (letter == sqc::Pauli::X) x_mask |= bit;
    if (letter == sqc::Pauli::Y) { x_mask |= bit; zy_mask |= bit; ++ny; }
    if (letter == sqc::Pauli::Z) zy_mask |= bit;
  }
  static const cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Mat m(std::uint64_t{1} << n);
  for (std::uint64_t b = 0; b < m.dim; ++b) {
    const double sign = (std::popcount(b & zy_mask) & 1) ? -1.0 : 1.0;
    m.at(b ^ x_mask, b) = i_pow[ny % 4] * sign;
  }
  return m;
}

inline Mat poly_matrix(const sqc::PauliPolynomial& poly, std::uint32_t n) {
  Mat m(std::uint64_t{1} << n);
  for (const auto& [s, c] : poly.terms()) m = add(m, pauli_matrix(s, n), c);
  return m;
}

// exp(-i theta/2 P) = cos(theta/2) I - i sin(theta/2) P (P involutory).
inline Mat pauli_rotation_matrix(const sqc::PauliString& p, double theta,
                                 std::uint32_t n) {
  Mat m = scale(identity(std::uint64_t{1} << n), std::cos(theta / 2.0));
  return add(m, pauli_matrix(p, n), cplx{0.0, -std::sin(theta / 2.0)});
}

// Single-qubit gate u (row-major 2x2) embedded on qubit q.
inline Mat embed_1q(const cplx u[4], std::uint32_t q, std::uint32_t n) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  Mat m(std::uint64_t{1} << n);
  for (std::uint64_t b = 0; b < m.dim; ++b) {
    if (b & bit) continue;
    m.at(b, b) = u[0];
    m.at(b, b | bit) = u[1];
    m.at(b | bit, b) = u[2];
    m.at(b | bit, b | bit) = u[3];
  }
  return m;
}

inline Mat gate_matrix(const sqc::Gate& g, std::uint32_t n) {
  using sqc::GateKind;
  const std::uint64_t dim = std::uint64_t{1} << n;
  switch (g.kind) {
    case GateKind::RZ: {
      const cplx u[4] = {std::polar(1.0, -g.angle / 2.0), 0.0, 0.0,
                         std::polar(1.0, g.angle / 2.0)};
      return embed_1q(u, g.qubits[0], n);
    }
    case GateKind::RX: {
      const double c = std::cos(g.angle / 2.0), s = std::sin(g.angle / 2.0);
      const cplx u[4] = {{c, 0}, {0, -s}, {0, -s}, {c, 0}};
      return embed_1q(u, g.qubits[0], n);
    }
    case GateKind::RY: {
      const double c = std::cos(g.angle / 2.0), s = std::sin(g.angle / 2.0);
      const cplx u[4] = {{c, 0}, {-s, 0}, {s, 0}, {c, 0}};
      return embed_1q(u, g.qubits[0], n);
    }
    case GateKind::SX: {
      const cplx u[4] = {{0.5, 0.5}, {0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}};
      return embed_1q(u, g.qubits[0], n);
    }
    case GateKind::X: {
      const cplx u[4] = {{0, 0}, {1, 0}, {1, 0}, {0, 0}};
      return embed_1q(u, g.qubits[0], n);
    }
    case GateKind::CZ: {
      const std::uint64_t both = (std::uint64_t{1} << g.qubits[0]) |
                                 (std::uint64_t{1} << g.qubits[1]);
      Mat m(dim);
      for (std::uint64_t b = 0; b < dim; ++b)
        m.at(b, b) = ((b & both) == both) ? -1.0 : 1.0;
      return m;
    }
    case GateKind::RZZ: {
      const std::uint64_t ba = std::uint64_t{1} << g.qubits[0];
      const std::uint64_t bb = std::uint64_t{1} << g.qubits[1];
      Mat m(dim);
      for (std::uint64_t b = 0; b < dim; ++b) {
        const bool same = ((b & ba) != 0) == ((b & bb) != 0);
        m.at(b, b) = std::polar(1.0, same ? -g.angle / 2.0 : g.angle / 2.0);
      }
      return m;
    }
    case GateKind::PauliRot:
      return pauli_rotation_matrix(g.pauli, g.angle, n);
  }
  return identity(dim);
}

// Product of the gate list as applied left to right to a state.
inline Mat gates_to_unitary(const std::vector<sqc::Gate>& gates,
                            std::uint32_t n) {
  Mat u = identity(std::uint64_t{1} << n);
  for (const auto& g : gates) u = matmul(gate_matrix(g, n), u);
  return u;
}

// max_ij |A_ij - e^{i phi} B_ij| minimized over the global phase, fixed by
// the largest entry of B.
inline double max_err_up_to_phase(const Mat& x, const Mat& y) {
  std::uint64_t ref = 0;
  double best = 0.0;
  for (std::uint64_t i = 0; i < y.a.size(); ++i)
    if (std::abs(y.a[i]) > best) { best = std::abs(y.a[i]); ref = i; }
  const cplx phase = (best > 0 && std::abs(x.a[ref]) > 0)
                         ? (x.a[ref] / y.a[ref]) /
                               std::abs(x.a[ref] / y.a[ref])
                         : cplx{1.0, 0.0};
  double err = 0.0;
  for (std::uint64_t i = 0; i < x.a.size(); ++i)
    err = std::max(err, std::abs(x.a[i] - phase * y.a[i]));
  return err;
}

// Minimizer of tr(G(alpha)^2), G = dH + alpha [H_ad, [H_ad, dH]]; the
// quadratic has a unique minimum whenever the double commutator is nonzero.
inline double alpha1_dense(const Mat& h_ad, const Mat& dh) {
  const Mat o1 = commutator(h_ad, dh);
  const Mat o2 = commutator(h_ad, o1);
  const double num = trace(matmul(dh, o2)).real();
  const double den = trace(matmul(o2, o2)).real();
  return -num / den;
}

}  // namespace oracle
