#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sqc/model.hpp"

namespace sqc {

enum class Pauli : std::uint8_t { X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

// Sparse Pauli string: sorted (qubit, letter) pairs, identities implicit.
// No phase is stored; phases live in polynomial coefficients.
class PauliString {
public:
  PauliString() = default;
  explicit PauliString(std::vector<std::pair<std::uint32_t, Pauli>> ops);

  static PauliString single(std::uint32_t qubit, Pauli p) {
    return PauliString({{qubit, p}});
  }

  const std::vector<std::pair<std::uint32_t, Pauli>>& ops() const {
    return ops_;
  }
  bool is_identity() const { return ops_.empty(); }
  std::size_t weight() const { return ops_.size(); }
  // Qubit indices of the support, ascending.
  Term support() const;

  std::string label() const;  // e.g. "X0 Y2 Z5", "I" for the identity

  auto operator<=>(const PauliString&) const = default;

private:
  std::vector<std::pair<std::uint32_t, Pauli>> ops_;
};

// a * b = phase * string, phase in {1, -1, i, -i}.
std::pair<std::complex<double>, PauliString> pauli_product(
    const PauliString& a, const PauliString& b);

// Complex-weighted sum of Pauli strings. Coefficients below 1e-14 in
// magnitude are dropped.
class PauliPolynomial {
public:
  static constexpr double kPruneThreshold = 1e-14;

  PauliPolynomial() = default;

  const std::map<PauliString, std::complex<double>>& terms() const {
    return terms_;
  }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  void add(const PauliString& s, std::complex<double> coeff);

  PauliPolynomial& operator+=(const PauliPolynomial& other);
  PauliPolynomial& operator-=(const PauliPolynomial& other);
  PauliPolynomial& operator*=(std::complex<double> scalar);
  friend PauliPolynomial operator+(PauliPolynomial a, const PauliPolynomial& b) {
    return a += b;
  }
  friend PauliPolynomial operator-(PauliPolynomial a, const PauliPolynomial& b) {
    return a -= b;
  }
  friend PauliPolynomial operator*(std::complex<double> s, PauliPolynomial a) {
    return a *= s;
  }

  bool is_hermitian(double tol = 1e-12) const;
  bool operator==(const PauliPolynomial&) const = default;

  // Sorted text listing, one "coeff  label" per line.
  std::string dump() const;

private:
  std::map<PauliString, std::complex<double>> terms_;
};

PauliPolynomial commutator(const PauliPolynomial& a, const PauliPolynomial& b);

// sum_P |c_P|^2 = tr(A A^dag) / 2^N by Pauli orthogonality.
double hs_norm_sq(const PauliPolynomial& a);

// The cost Hamiltonian as a polynomial of Z strings.
PauliPolynomial hubo_to_pauli(const HuboInstance& instance);

// Initial Hamiltonian sum_j (h^x_j X_j - h^b_j Z_j). The minus sign makes
// the depth-one RY preparation layer its exact ground state while biasing
// measurements toward <sigma^z_j> = h^b_j.
PauliPolynomial bias_hamiltonian(const BiasConfig& bias);

}  // namespace sqc
