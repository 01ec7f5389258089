#include <doctest.h>

#include <complex>
#include <random>

#include "dense_oracle.hpp"
#include "sqc/error.hpp"
#include "sqc/pauli.hpp"

using namespace sqc;
using cplx = std::complex<double>;

namespace {

PauliPolynomial random_poly(std::uint32_t n, std::mt19937_64& rng,
                            std::size_t n_terms, bool real_coeffs = true) {
  PauliPolynomial p;
  for (std::size_t t = 0; t < n_terms; ++t) {
    std::vector<std::pair<std::uint32_t, Pauli>> ops;
    for (std::uint32_t q = 0; q < n; ++q) {
      switch (rng() % 4) {
        case 1: ops.push_back({q, Pauli::X}); break;
        case 2: ops.push_back({q, Pauli::Y}); break;
        case 3: ops.push_back({q, Pauli::Z}); break;
        default: break;
      }
    }
    if (ops.empty()) continue;
    const double re = static_cast<double>(rng() % 17) / 8.0 - 1.0;
    const double im = real_coeffs ? 0.0
                                  : static_cast<double>(rng() % 17) / 8.0 - 1.0;
    p.add(PauliString(ops), {re, im});
  }
  return p;
}

double dense_diff(const PauliPolynomial& p, const oracle::Mat& m,
                  std::uint32_t n) {
  oracle::Mat d = oracle::add(oracle::poly_matrix(p, n), m, -1.0);
  double err = 0.0;
  for (const auto& v : d.a) err = std::max(err, std::abs(v));
  return err;
}

}  // namespace

TEST_CASE("pauli string normalizes and labels") {
  PauliString p({{5, Pauli::Z}, {0, Pauli::X}, {2, Pauli::Y}});
  CHECK(p.label() == "X0 Y2 Z5");
  CHECK(p.weight() == 3);
  CHECK(p.support() == Term{0, 2, 5});
  CHECK(PauliString().label() == "I");
  CHECK(PauliString().is_identity());
  CHECK_THROWS_AS(PauliString({{1, Pauli::X}, {1, Pauli::Z}}), Error);
}

TEST_CASE("single-site products follow the multiplication table") {
  auto prod = [](Pauli a, Pauli b) {
    return pauli_product(PauliString::single(0, a), PauliString::single(0, b));
  };
  // XY = iZ, YX = -iZ, cyclic
  CHECK(prod(Pauli::X, Pauli::Y) ==
        std::pair<cplx, PauliString>{{0, 1}, PauliString::single(0, Pauli::Z)});
  CHECK(prod(Pauli::Y, Pauli::X).first == cplx{0, -1});
  CHECK(prod(Pauli::Y, Pauli::Z).first == cplx{0, 1});
  CHECK(prod(Pauli::Z, Pauli::X).first == cplx{0, 1});
  // XZ = -iY
  auto [ph, s] = prod(Pauli::X, Pauli::Z);
  CHECK(ph == cplx{0, -1});
  CHECK(s == PauliString::single(0, Pauli::Y));
  // squares are identity
  CHECK(prod(Pauli::X, Pauli::X) == std::pair<cplx, PauliString>{{1, 0}, {}});
}

TEST_CASE("multi-site product matches the dense oracle") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 60; ++rep) {
    const std::uint32_t n = 1 + rng() % 4;
    PauliPolynomial pa = random_poly(n, rng, 1);
    PauliPolynomial pb = random_poly(n, rng, 1);
    if (pa.empty() || pb.empty()) continue;
    const auto& [sa, ca] = *pa.terms().begin();
    const auto& [sb, cb] = *pb.terms().begin();
    auto [phase, sp] = pauli_product(sa, sb);
    oracle::Mat expect = oracle::matmul(oracle::pauli_matrix(sa, n),
                                        oracle::pauli_matrix(sb, n));
    PauliPolynomial got;
    got.add(sp, phase);
    CHECK(dense_diff(got, expect, n) < 1e-12);
  }
}

TEST_CASE("polynomial arithmetic and pruning") {
  PauliPolynomial p;
  p.add(PauliString::single(0, Pauli::X), 1.0);
  p.add(PauliString::single(0, Pauli::X), -1.0 + 1e-16);
  CHECK(p.empty());  // below the prune threshold

  PauliPolynomial a, b;
  a.add(PauliString::single(0, Pauli::Z), 2.0);
  b.add(PauliString::single(0, Pauli::Z), -0.5);
  b.add(PauliString::single(1, Pauli::X), 1.0);
  PauliPolynomial s = a + b;
  CHECK(s.terms().at(PauliString::single(0, Pauli::Z)) == cplx{1.5, 0});
  CHECK(s.size() == 2);
  s *= 2.0;
  CHECK(s.terms().at(PauliString::single(1, Pauli::X)) == cplx{2, 0});
}

TEST_CASE("commutator worked examples") {
  PauliPolynomial x, y, z;
  x.add(PauliString::single(0, Pauli::X), 1.0);
  y.add(PauliString::single(0, Pauli::Y), 1.0);
  z.add(PauliString::single(0, Pauli::Z), 1.0);

  // [X, Z] = -2iY
  PauliPolynomial xz = commutator(x, z);
  REQUIRE(xz.size() == 1);
  CHECK(xz.terms().at(PauliString::single(0, Pauli::Y)) == cplx{0, -2});

  // [Z0 Z1, X0] = 2i Y0 Z1
  PauliPolynomial zz;
  zz.add(PauliString({{0, Pauli::Z}, {1, Pauli::Z}}), 1.0);
  PauliPolynomial c = commutator(zz, x);
  REQUIRE(c.size() == 1);
  CHECK(c.terms().at(PauliString({{0, Pauli::Y}, {1, Pauli::Z}})) ==
        cplx{0, 2});

  // commuting strings
  CHECK(commutator(z, zz).empty());
}

TEST_CASE("commutator matches the dense oracle and is antisymmetric") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 40; ++rep) {
    const std::uint32_t n = 1 + rng() % 4;
    PauliPolynomial a = random_poly(n, rng, 4, false);
    PauliPolynomial b = random_poly(n, rng, 4, false);
    PauliPolynomial c = commutator(a, b);
    oracle::Mat expect = oracle::commutator(oracle::poly_matrix(a, n),
                                            oracle::poly_matrix(b, n));
    CHECK(dense_diff(c, expect, n) < 1e-12);

    PauliPolynomial neg = commutator(b, a);
    neg *= -1.0;
    CHECK(c == neg);
  }
}

TEST_CASE("hs norm equals tr(A A^dag) / 2^N") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    const std::uint32_t n = 1 + rng() % 4;
    PauliPolynomial a = random_poly(n, rng, 5, false);
    oracle::Mat m = oracle::poly_matrix(a, n);
    double tr = 0.0;
    for (const auto& v : m.a) tr += std::norm(v);  // tr(A A^dag) elementwise
    CHECK(hs_norm_sq(a) ==
          doctest::Approx(tr / static_cast<double>(m.dim)).epsilon(1e-12));
  }
}

TEST_CASE("hermiticity detection") {
  PauliPolynomial h;
  h.add(PauliString::single(0, Pauli::X), 1.5);
  h.add(PauliString({{0, Pauli::Y}, {1, Pauli::Z}}), -0.25);
  CHECK(h.is_hermitian());
  h.add(PauliString::single(1, Pauli::Z), cplx{0, 0.5});
  CHECK(!h.is_hermitian());
}

TEST_CASE("hubo_to_pauli reproduces diagonal energies") {
  HuboInstance inst(3);
  inst.add_term({0}, 0.5);
  inst.add_term({0, 2}, -1.0);
  inst.add_term({0, 1, 2}, 0.75);
  PauliPolynomial p = hubo_to_pauli(inst);
  CHECK(p.size() == 3);
  oracle::Mat m = oracle::poly_matrix(p, 3);
  for (std::uint64_t b = 0; b < 8; ++b) {
    const double e = energy(inst, SpinConfig::from_bits(b, 3));
    CHECK(m.at(b, b).real() == doctest::Approx(e));
    CHECK(m.at(b, b).imag() == doctest::Approx(0.0));
  }
}

TEST_CASE("bias hamiltonian carries the resolved sign convention") {
  BiasConfig bias = BiasConfig::uniform(2);
  bias.h_b[1] = 0.5;
  PauliPolynomial h = bias_hamiltonian(bias);
  CHECK(h.terms().at(PauliString::single(0, Pauli::X)) == cplx{-1, 0});
  CHECK(h.terms().at(PauliString::single(1, Pauli::X)) == cplx{-1, 0});
  CHECK(h.terms().at(PauliString::single(1, Pauli::Z)) == cplx{-0.5, 0});
  CHECK(h.terms().count(PauliString::single(0, Pauli::Z)) == 0);
}
