#include "sqc/annealer.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>

#include "sqc/error.hpp"
#include "sqc/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sqc {

namespace {

// Boolean monomial expansion of prod(1 - 2 x_i) over a spin tuple.
void expand_spin_term(const Term& tuple, double coeff,
                      std::map<Term, double>& poly, double& constant) {
  const std::size_t k = tuple.size();
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    Term sub;
    double c = coeff;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (1u << i)) {
        sub.push_back(tuple[i]);
        c *= -2.0;
      }
    }
    if (sub.empty())
      constant += c;
    else
      poly[sub] += c;
  }
}

using Pair = std::pair<std::uint32_t, std::uint32_t>;

}  // namespace

QuboInstance hubo_to_qubo(const HuboInstance& instance, double penalty) {
  if (instance.max_arity() > 3)
    fail("unsupported", "degree reduction supports arity up to 3");

  std::map<Term, double> poly;
  double constant = 0.0;
  for (const auto& [t, c] : instance.terms())
    expand_spin_term(t, c, poly, constant);

  if (penalty <= 0.0) {
    double total = 0.0;
    for (const auto& [t, c] : poly) total += std::abs(c);
    penalty = 2.0 * total;
  }

  QuboInstance qubo;
  qubo.num_original = instance.num_spins();
  qubo.num_vars = instance.num_spins();
  qubo.offset = constant;
  qubo.penalty = penalty;

  // Pair frequencies over the cubic monomials drive the shared-auxiliary
  // choice: each cubic term substitutes its most frequent pair.
  std::map<Pair, std::uint32_t> pair_freq;
  for (const auto& [t, c] : poly) {
    if (t.size() != 3) continue;
    ++pair_freq[{t[0], t[1]}];
    ++pair_freq[{t[0], t[2]}];
    ++pair_freq[{t[1], t[2]}];
  }

  std::map<Pair, std::uint32_t> aux_of_pair;
  auto aux_for = [&](const Pair& p) {
    auto it = aux_of_pair.find(p);
    if (it != aux_of_pair.end()) return it->second;
    std::uint32_t w = qubo.num_vars++;
    aux_of_pair.emplace(p, w);
    qubo.aux_map.emplace(w, p);
    // Rosenberg penalty: xy - 2xw - 2yw + 3w vanishes iff w = xy
    qubo.quadratic[p] += penalty;
    qubo.quadratic[{p.first, w}] += -2.0 * penalty;
    qubo.quadratic[{p.second, w}] += -2.0 * penalty;
    qubo.linear[w] += 3.0 * penalty;
    return w;
  };

  for (const auto& [t, c] : poly) {
    switch (t.size()) {
      case 1:
        qubo.linear[t[0]] += c;
        break;
      case 2:
        qubo.quadratic[{t[0], t[1]}] += c;
        break;
      case 3: {
        Pair pairs[3] = {{t[0], t[1]}, {t[0], t[2]}, {t[1], t[2]}};
        Pair best = pairs[0];
        for (const Pair& p : pairs)
          if (pair_freq[p] > pair_freq[best] ||
              (pair_freq[p] == pair_freq[best] && p < best))
            best = p;
        std::uint32_t w = aux_for(best);
        std::uint32_t z = t[0] ^ t[1] ^ t[2] ^ best.first ^ best.second;
        qubo.quadratic[{std::min(w, z), std::max(w, z)}] += c;
        break;
      }
      default:
        fail("unsupported", "unexpected monomial degree");
    }
  }

  for (auto it = qubo.linear.begin(); it != qubo.linear.end();)
    it = it->second == 0.0 ? qubo.linear.erase(it) : std::next(it);
  for (auto it = qubo.quadratic.begin(); it != qubo.quadratic.end();)
    it = it->second == 0.0 ? qubo.quadratic.erase(it) : std::next(it);
  return qubo;
}

double qubo_energy(const QuboInstance& qubo,
                   const std::vector<std::uint8_t>& booleans) {
  if (booleans.size() != qubo.num_vars)
    fail("dimension", "boolean config size mismatch");
  double e = qubo.offset;
  for (const auto& [i, c] : qubo.linear)
    if (booleans[i]) e += c;
  for (const auto& [p, c] : qubo.quadratic)
    if (booleans[p.first] && booleans[p.second]) e += c;
  return e;
}

SpinConfig decode(const QuboInstance& qubo,
                  const std::vector<std::uint8_t>& booleans) {
  if (booleans.size() < qubo.num_original)
    fail("dimension", "boolean config too short");
  SpinConfig cfg;
  cfg.spins.reserve(qubo.num_original);
  for (std::uint32_t i = 0; i < qubo.num_original; ++i)
    cfg.spins.push_back(booleans[i] ? -1 : 1);
  return cfg;
}

namespace {

// Shared Metropolis core over an Ising polynomial (terms of any arity plus
// a constant). Returns the best configuration visited per restart.
struct IsingPoly {
  std::uint32_t num_spins = 0;
  double constant = 0.0;
  std::vector<std::pair<Term, double>> terms;
};

IsingPoly to_ising(const HuboInstance& instance) {
  IsingPoly p;
  p.num_spins = instance.num_spins();
  for (const auto& [t, c] : instance.terms()) p.terms.push_back({t, c});
  return p;
}

IsingPoly to_ising(const QuboInstance& qubo) {
  // x = (1 - s) / 2
  IsingPoly p;
  p.num_spins = qubo.num_vars;
  std::map<Term, double> acc;
  p.constant = qubo.offset;
  for (const auto& [i, c] : qubo.linear) {
    p.constant += c / 2.0;
    acc[{i}] += -c / 2.0;
  }
  for (const auto& [pr, c] : qubo.quadratic) {
    p.constant += c / 4.0;
    acc[{pr.first}] += -c / 4.0;
    acc[{pr.second}] += -c / 4.0;
    acc[{pr.first, pr.second}] += c / 4.0;
  }
  for (const auto& [t, c] : acc)
    if (c != 0.0) p.terms.push_back({t, c});
  return p;
}

struct RestartResult {
  std::vector<std::int8_t> spins;
  double energy;
};

RestartResult anneal_once(const IsingPoly& poly,
                          const std::vector<std::vector<std::uint32_t>>& incident,
                          const AnnealParams& params, std::uint64_t seed) {
  const std::uint32_t n = poly.num_spins;
  std::mt19937_64 rng(seed);
  std::vector<std::int8_t> spins(n);
  for (auto& s : spins) s = (rng() & 1) ? -1 : 1;

  auto full_energy = [&]() {
    double e = poly.constant;
    for (const auto& [t, c] : poly.terms) {
      int prod = 1;
      for (std::uint32_t q : t) prod *= spins[q];
      e += c * prod;
    }
    return e;
  };

  double energy = full_energy();
  RestartResult best{spins, energy};
  const double ratio = params.t_cold / params.t_hot;
#ifndef NDEBUG
  std::uint64_t accepted = 0;
#endif

  for (std::uint32_t sweep = 0; sweep < params.sweeps; ++sweep) {
    const double frac = params.sweeps > 1
                            ? static_cast<double>(sweep) / (params.sweeps - 1)
                            : 0.0;
    const double temp = params.t_hot * std::pow(ratio, frac);
    for (std::uint32_t i = 0; i < n; ++i) {
      double local = 0.0;
      for (std::uint32_t ti : incident[i]) {
        const auto& [t, c] = poly.terms[ti];
        int prod = 1;
        for (std::uint32_t q : t) prod *= spins[q];
        local += c * prod;
      }
      const double delta = -2.0 * local;
      if (delta <= 0.0 || uniform01(rng) < std::exp(-delta / temp)) {
        spins[i] = static_cast<std::int8_t>(-spins[i]);
        energy += delta;
#ifndef NDEBUG
        if (++accepted % 100 == 0)
          assert(std::abs(energy - full_energy()) < 1e-8 &&
                 "incremental energy drifted");
#endif
        if (energy < best.energy) best = {spins, energy};
      }
    }
  }
  return best;
}

SampleSet collect(const std::vector<RestartResult>& results,
                  const std::function<std::pair<std::string, double>(
                      const RestartResult&)>& project,
                  std::uint32_t num_spins) {
  std::map<std::string, std::pair<std::uint64_t, double>> agg;
  for (const auto& r : results) {
    auto [bits, e] = project(r);
    auto [it, fresh] = agg.emplace(bits, std::make_pair(std::uint64_t{1}, e));
    if (!fresh) ++it->second.first;
  }
  SampleSet out;
  out.num_spins = num_spins;
  out.total_shots = results.size();
  for (const auto& [bits, me] : agg)
    out.entries.push_back({bits, me.first, me.second});
  return out;
}

std::vector<RestartResult> run_restarts(const IsingPoly& poly,
                                        const AnnealParams& params) {
  if (params.sweeps < 1) fail("input", "sweeps must be at least 1");
  if (params.restarts < 1) fail("input", "restarts must be at least 1");
  if (!(params.t_hot > params.t_cold) || !(params.t_cold > 0.0))
    fail("input", "need t_hot > t_cold > 0");

  std::vector<std::vector<std::uint32_t>> incident(poly.num_spins);
  for (std::uint32_t ti = 0; ti < poly.terms.size(); ++ti)
    for (std::uint32_t q : poly.terms[ti].first) incident[q].push_back(ti);

  std::vector<RestartResult> results(params.restarts);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(params.restarts);
       ++r) {
    results[r] = anneal_once(poly, incident, params,
                             params.seed + static_cast<std::uint64_t>(r));
  }
  return results;
}

}  // namespace

SampleSet simulated_anneal(const HuboInstance& instance,
                           const AnnealParams& params) {
  auto results = run_restarts(to_ising(instance), params);
  auto out = collect(
      results,
      [&](const RestartResult& r) {
        SpinConfig cfg{r.spins};
        return std::make_pair(cfg.to_bitstring(), r.energy);
      },
      instance.num_spins());
  return out;
}

SampleSet simulated_anneal(const QuboInstance& qubo,
                           const HuboInstance& original,
                           const AnnealParams& params) {
  if (qubo.num_original != original.num_spins())
    fail("dimension", "qubo does not reduce the given instance");
  auto results = run_restarts(to_ising(qubo), params);
  auto out = collect(
      results,
      [&](const RestartResult& r) {
        std::vector<std::uint8_t> booleans(r.spins.size());
        for (std::size_t i = 0; i < r.spins.size(); ++i)
          booleans[i] = r.spins[i] < 0;
        SpinConfig cfg = decode(qubo, booleans);
        return std::make_pair(cfg.to_bitstring(), energy(original, cfg));
      },
      original.num_spins());
  return out;
}

void save_qubo(const QuboInstance& qubo, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("input", "cannot write qubo file: " + path);
  char buf[64];
  auto fmt = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  out << "sqc-qubo v1\n";
  out << "vars " << qubo.num_vars << " original " << qubo.num_original << "\n";
  out << "offset " << fmt(qubo.offset) << "\n";
  out << "penalty " << fmt(qubo.penalty) << "\n";
  for (const auto& [i, c] : qubo.linear)
    out << "lin " << i << " : " << fmt(c) << "\n";
  for (const auto& [p, c] : qubo.quadratic)
    out << "quad " << p.first << " " << p.second << " : " << fmt(c) << "\n";
  for (const auto& [w, p] : qubo.aux_map)
    out << "aux " << w << " = " << p.first << " * " << p.second << "\n";
}

}  // namespace sqc
