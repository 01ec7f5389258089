#include "sqc/pauli.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "sqc/error.hpp"

namespace sqc {

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

PauliString::PauliString(std::vector<std::pair<std::uint32_t, Pauli>> ops)
    : ops_(std::move(ops)) {
  std::sort(ops_.begin(), ops_.end());
  for (std::size_t i = 1; i < ops_.size(); ++i)
    if (ops_[i].first == ops_[i - 1].first)
      fail("input", "duplicate qubit in Pauli string");
}

Term PauliString::support() const {
  Term t;
  t.reserve(ops_.size());
  for (const auto& [q, p] : ops_) t.push_back(q);
  return t;
}

std::string PauliString::label() const {
  if (ops_.empty()) return "I";
  std::string s;
  for (const auto& [q, p] : ops_) {
    if (!s.empty()) s += ' ';
    s += pauli_char(p);
    s += std::to_string(q);
  }
  return s;
}

namespace {

// Single-site product table: a*b = phase * result, 0 encodes identity.
// X*Y = iZ, Y*Z = iX, Z*X = iY, and antisymmetric counterparts.
struct SiteProduct {
  std::complex<double> phase;
  std::uint8_t result;  // 0 = I
};

SiteProduct site_product(std::uint8_t a, std::uint8_t b) {
  if (a == b) return {1.0, 0};
  // cyclic (X,Y,Z) = (1,2,3): a followed by its successor gives +i
  std::uint8_t c = static_cast<std::uint8_t>(6 - a - b);  // the third letter
  bool forward = (b == a % 3 + 1);
  return {forward ? std::complex<double>(0.0, 1.0)
                  : std::complex<double>(0.0, -1.0),
          c};
}

}  // namespace

std::pair<std::complex<double>, PauliString> pauli_product(
    const PauliString& a, const PauliString& b) {
  std::vector<std::pair<std::uint32_t, Pauli>> out;
  out.reserve(a.weight() + b.weight());
  std::complex<double> phase = 1.0;

  auto ia = a.ops().begin(), ea = a.ops().end();
  auto ib = b.ops().begin(), eb = b.ops().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == ea || ib->first < ia->first) {
      out.push_back(*ib++);
    } else {
      auto sp = site_product(static_cast<std::uint8_t>(ia->second),
                             static_cast<std::uint8_t>(ib->second));
      phase *= sp.phase;
      if (sp.result != 0)
        out.push_back({ia->first, static_cast<Pauli>(sp.result)});
      ++ia;
      ++ib;
    }
  }
  return {phase, PauliString(std::move(out))};
}

void PauliPolynomial::add(const PauliString& s, std::complex<double> coeff) {
  auto it = terms_.find(s);
  if (it == terms_.end()) {
    if (std::abs(coeff) >= kPruneThreshold) terms_.emplace(s, coeff);
  } else {
    it->second += coeff;
    if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
  }
}

PauliPolynomial& PauliPolynomial::operator+=(const PauliPolynomial& other) {
  for (const auto& [s, c] : other.terms_) add(s, c);
  return *this;
}

PauliPolynomial& PauliPolynomial::operator-=(const PauliPolynomial& other) {
  for (const auto& [s, c] : other.terms_) add(s, -c);
  return *this;
}

PauliPolynomial& PauliPolynomial::operator*=(std::complex<double> scalar) {
  if (std::abs(scalar) < kPruneThreshold) {
    terms_.clear();
    return *this;
  }
  for (auto& [s, c] : terms_) c *= scalar;
  return *this;
}

bool PauliPolynomial::is_hermitian(double tol) const {
  for (const auto& [s, c] : terms_)
    if (std::abs(c.imag()) > tol) return false;
  return true;
}

std::string PauliPolynomial::dump() const {
  std::ostringstream out;
  char buf[80];
  for (const auto& [s, c] : terms_) {
    std::snprintf(buf, sizeof(buf), "%+.12g%+.12gi  ", c.real(), c.imag());
    out << buf << s.label() << "\n";
  }
  return out.str();
}

PauliPolynomial commutator(const PauliPolynomial& a, const PauliPolynomial& b) {
  // For Pauli strings P, Q either PQ = QP (drops out) or PQ = -QP, in which
  // case [P, Q] = 2 PQ.
  PauliPolynomial result;
  for (const auto& [pa, ca] : a.terms()) {
    for (const auto& [pb, cb] : b.terms()) {
      auto [phase_ab, prod] = pauli_product(pa, pb);
      auto [phase_ba, prod2] = pauli_product(pb, pa);
      if (phase_ab != phase_ba)
        result.add(prod, 2.0 * phase_ab * ca * cb);
    }
  }
  return result;
}

double hs_norm_sq(const PauliPolynomial& a) {
  double s = 0.0;
  for (const auto& [p, c] : a.terms()) s += std::norm(c);
  return s;
}

PauliPolynomial hubo_to_pauli(const HuboInstance& instance) {
  PauliPolynomial poly;
  for (const auto& [t, c] : instance.terms()) {
    std::vector<std::pair<std::uint32_t, Pauli>> ops;
    ops.reserve(t.size());
    for (std::uint32_t i : t) ops.push_back({i, Pauli::Z});
    poly.add(PauliString(std::move(ops)), c);
  }
  return poly;
}

PauliPolynomial bias_hamiltonian(const BiasConfig& bias) {
  PauliPolynomial poly;
  for (std::uint32_t j = 0; j < bias.size(); ++j) {
    poly.add(PauliString::single(j, Pauli::X), bias.h_x[j]);
    poly.add(PauliString::single(j, Pauli::Z), -bias.h_b[j]);
  }
  return poly;
}

}  // namespace sqc
