#include "sqc/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sqc/error.hpp"
#include "sqc/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sqc {

std::uint32_t HuboInstance::max_arity() const {
  std::size_t k = 0;
  for (const auto& [t, c] : terms_) k = std::max(k, t.size());
  return static_cast<std::uint32_t>(k);
}

void HuboInstance::add_term(const Term& indices, double coeff) {
  if (indices.empty()) fail("input", "empty index tuple");
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= num_spins_)
      fail("input", "term index " + std::to_string(indices[i]) +
                        " out of range for " + std::to_string(num_spins_) +
                        " spins");
    if (i > 0 && indices[i] <= indices[i - 1])
      fail("input", "term indices must be strictly ascending");
  }
  auto it = terms_.find(indices);
  if (it == terms_.end()) {
    if (coeff != 0.0) terms_.emplace(indices, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

std::size_t HuboInstance::count_terms_of_arity(std::uint32_t k) const {
  std::size_t n = 0;
  for (const auto& [t, c] : terms_)
    if (t.size() == k) ++n;
  return n;
}

SpinConfig SpinConfig::from_bitstring(const std::string& bits) {
  SpinConfig c;
  c.spins.reserve(bits.size());
  for (char ch : bits) {
    if (ch != '0' && ch != '1') fail("input", "bitstring must be 0/1");
    c.spins.push_back(ch == '0' ? 1 : -1);
  }
  return c;
}

SpinConfig SpinConfig::from_bits(std::uint64_t bits, std::uint32_t n) {
  SpinConfig c;
  c.spins.reserve(n);
  for (std::uint32_t j = 0; j < n; ++j)
    c.spins.push_back((bits >> j) & 1 ? -1 : 1);
  return c;
}

std::string SpinConfig::to_bitstring() const {
  std::string s(spins.size(), '0');
  for (std::size_t j = 0; j < spins.size(); ++j)
    if (spins[j] < 0) s[j] = '1';
  return s;
}

std::uint64_t SpinConfig::to_bits() const {
  std::uint64_t b = 0;
  for (std::size_t j = 0; j < spins.size(); ++j)
    if (spins[j] < 0) b |= std::uint64_t{1} << j;
  return b;
}

void SampleSet::sort_by_energy() {
  std::sort(entries.begin(), entries.end(),
            [](const SampleEntry& a, const SampleEntry& b) {
              if (a.energy != b.energy) return a.energy < b.energy;
              return a.bitstring < b.bitstring;
            });
}

double SampleSet::min_energy() const {
  if (entries.empty()) fail("input", "empty sample set");
  double m = entries.front().energy;
  for (const auto& e : entries) m = std::min(m, e.energy);
  return m;
}

const SampleEntry& SampleSet::best() const {
  if (entries.empty()) fail("input", "empty sample set");
  const SampleEntry* best = &entries.front();
  for (const auto& e : entries) {
    if (e.energy < best->energy ||
        (e.energy == best->energy && e.bitstring < best->bitstring))
      best = &e;
  }
  return *best;
}

double energy(const HuboInstance& instance, const SpinConfig& config) {
  if (config.size() != instance.num_spins())
    fail("dimension", "config length " + std::to_string(config.size()) +
                          " != num_spins " +
                          std::to_string(instance.num_spins()));
  double e = 0.0;
  for (const auto& [t, c] : instance.terms()) {
    int prod = 1;
    for (std::uint32_t i : t) prod *= config.spins[i];
    e += c * prod;
  }
  return e;
}

namespace {

// Energy as a function of a bit pattern, used by the enumeration below.
double energy_bits(const HuboInstance& instance, std::uint64_t bits) {
  double e = 0.0;
  for (const auto& [t, c] : instance.terms()) {
    int par = 0;
    for (std::uint32_t i : t) par ^= static_cast<int>((bits >> i) & 1);
    e += par ? -c : c;
  }
  return e;
}

struct GroundScan {
  double energy;
  std::uint64_t bits;
};

// Gray-code walk over [begin, end): each step flips one spin and updates the
// energy via the terms incident to that spin.
GroundScan scan_range(const HuboInstance& instance,
                      const std::vector<std::vector<std::pair<double, Term>>>& incident,
                      std::uint64_t begin, std::uint64_t end) {
  std::uint64_t gray = begin ^ (begin >> 1);
  double e = energy_bits(instance, gray);
  GroundScan best{e, gray};
  for (std::uint64_t i = begin + 1; i < end; ++i) {
    std::uint64_t next = i ^ (i >> 1);
    std::uint64_t flipped = gray ^ next;
    std::uint32_t j = static_cast<std::uint32_t>(__builtin_ctzll(flipped));
    double delta = 0.0;
    for (const auto& [c, t] : incident[j]) {
      int par = 0;
      for (std::uint32_t q : t) par ^= static_cast<int>((gray >> q) & 1);
      delta += par ? 2.0 * c : -2.0 * c;  // term value negates
    }
    e += delta;
    gray = next;
    if (e < best.energy || (e == best.energy && gray < best.bits))
      best = {e, gray};
  }
  return best;
}

}  // namespace

std::pair<SpinConfig, double> brute_force_ground(const HuboInstance& instance) {
  const std::uint32_t n = instance.num_spins();
  if (n == 0) fail("input", "empty instance");
  if (n > 26) fail("capacity", "brute force limited to 26 spins");

  std::vector<std::vector<std::pair<double, Term>>> incident(n);
  for (const auto& [t, c] : instance.terms())
    for (std::uint32_t i : t) incident[i].push_back({c, t});

  const std::uint64_t total = std::uint64_t{1} << n;
  // Fixed chunking keeps the merge order independent of thread count.
  const std::uint64_t chunks = std::min<std::uint64_t>(total, 64);
  const std::uint64_t step = total / chunks;
  std::vector<GroundScan> partial(chunks);

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    std::uint64_t begin = static_cast<std::uint64_t>(c) * step;
    std::uint64_t end = (c + 1 == static_cast<std::int64_t>(chunks)) ? total
                                                                     : begin + step;
    partial[c] = scan_range(instance, incident, begin, end);
  }

  GroundScan best = partial[0];
  for (const auto& p : partial)
    if (p.energy < best.energy || (p.energy == best.energy && p.bits < best.bits))
      best = p;
  return {SpinConfig::from_bits(best.bits, n), best.energy};
}

double cvar_energy(const SampleSet& samples, double alpha) {
  if (samples.empty()) fail("input", "empty sample set");
  if (!(alpha > 0.0) || alpha > 1.0) fail("input", "alpha must be in (0, 1]");
  SampleSet sorted = samples;
  sorted.sort_by_energy();
  std::uint64_t want = static_cast<std::uint64_t>(
      std::ceil(alpha * static_cast<double>(samples.total_shots)));
  want = std::max<std::uint64_t>(want, 1);
  double sum = 0.0;
  std::uint64_t taken = 0;
  for (const auto& e : sorted.entries) {
    std::uint64_t take = std::min<std::uint64_t>(e.multiplicity, want - taken);
    sum += e.energy * static_cast<double>(take);
    taken += take;
    if (taken == want) break;
  }
  if (taken == 0) fail("input", "sample set has zero total multiplicity");
  return sum / static_cast<double>(taken);
}

double approximation_ratio(const SampleSet& samples, double e0, double alpha) {
  if (e0 == 0.0) fail("input", "E0 = 0 has no approximation ratio");
  if (e0 > 0.0) fail("input", "approximation ratio requires E0 < 0");
  return cvar_energy(samples, alpha) / e0;
}

HuboInstance generate_sidon_instance(const CouplingMap& map, std::uint64_t seed) {
  if (map.num_nodes == 0) fail("input", "empty coupling map");
  std::mt19937_64 rng(seed);
  auto draw = [&rng]() { return kSidonSet[uniform_index(rng, kSidonSet.size())]; };

  HuboInstance inst(map.num_nodes);
  for (std::uint32_t i = 0; i < map.num_nodes; ++i) inst.add_term({i}, draw());

  auto edges = map.edges;
  std::sort(edges.begin(), edges.end());
  for (const auto& [a, b] : edges) inst.add_term({a, b}, draw());

  auto triples = map.triples;
  std::sort(triples.begin(), triples.end());
  for (const auto& t : triples) inst.add_term({t[0], t[1], t[2]}, draw());
  return inst;
}

CouplingMap load_coupling_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("parse", "cannot open coupling map file: " + path);
  CouplingMap map;
  std::string line;
  std::size_t lineno = 0;
  std::uint32_t max_node = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long a, b;
    if (!(ls >> a)) continue;  // blank
    std::string trailing;
    if (!(ls >> b) || (ls >> trailing) || a < 0 || b < 0 || a == b)
      fail("parse", path + ":" + std::to_string(lineno) +
                        ": expected one 'i j' pair");
    auto lo = static_cast<std::uint32_t>(std::min(a, b));
    auto hi = static_cast<std::uint32_t>(std::max(a, b));
    map.edges.push_back({lo, hi});
    max_node = std::max(max_node, hi);
    any = true;
  }
  if (!any) fail("parse", path + ": no edges");
  std::sort(map.edges.begin(), map.edges.end());
  map.edges.erase(std::unique(map.edges.begin(), map.edges.end()),
                  map.edges.end());
  map.num_nodes = max_node + 1;
  return map;
}

void derive_triples(CouplingMap& map) {
  std::vector<std::vector<std::uint32_t>> adj(map.num_nodes);
  for (const auto& [a, b] : map.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& ns : adj) std::sort(ns.begin(), ns.end());

  std::vector<std::array<std::uint32_t, 3>> triples;
  for (std::uint32_t v = 0; v < map.num_nodes; ++v) {
    const auto& ns = adj[v];
    for (std::size_t i = 0; i < ns.size(); ++i)
      for (std::size_t j = i + 1; j < ns.size(); ++j) {
        std::array<std::uint32_t, 3> t{v, ns[i], ns[j]};
        std::sort(t.begin(), t.end());
        triples.push_back(t);
      }
  }
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
  map.triples = std::move(triples);
}

std::string format_coefficient(double value) {
  double scaled = value * 28.0;
  double rounded = std::nearbyint(scaled);
  if (rounded == scaled && std::abs(rounded) <= 28.0 &&
      rounded / 28.0 == value) {
    return std::to_string(static_cast<long long>(rounded)) + "/28";
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

double parse_coefficient(const std::string& tok, const std::string& where) {
  auto slash = tok.find('/');
  try {
    if (slash != std::string::npos) {
      double num = std::stod(tok.substr(0, slash));
      double den = std::stod(tok.substr(slash + 1));
      if (den == 0.0) fail("parse", where + ": zero denominator");
      return num / den;
    }
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) fail("parse", where + ": bad coefficient " + tok);
    return v;
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail("parse", where + ": bad coefficient " + tok);
  }
}

}  // namespace

void save_instance(const HuboInstance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("input", "cannot write instance file: " + path);
  out << "sqc-hubo v1\n";
  out << "spins " << instance.num_spins() << "\n";
  for (const auto& [t, c] : instance.terms()) {
    for (std::uint32_t i : t) out << i << " ";
    out << ": " << format_coefficient(c) << "\n";
  }
}

HuboInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("parse", "cannot open instance file: " + path);
  std::string line;
  std::size_t lineno = 0;

  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  auto where = [&]() { return path + ":" + std::to_string(lineno); };

  if (!next_line() || line.rfind("sqc-hubo v1", 0) != 0)
    fail("parse", path + ": missing 'sqc-hubo v1' header");
  if (!next_line()) fail("parse", path + ": missing 'spins' line");
  std::istringstream hs(line);
  std::string kw;
  long long n = -1;
  hs >> kw >> n;
  if (kw != "spins" || n <= 0) fail("parse", where() + ": bad 'spins' line");

  HuboInstance inst(static_cast<std::uint32_t>(n));
  while (next_line()) {
    std::istringstream ls(line);
    Term t;
    std::string tok;
    bool saw_colon = false;
    while (ls >> tok) {
      if (tok == ":") {
        saw_colon = true;
        break;
      }
      try {
        t.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
      } catch (...) {
        fail("parse", where() + ": bad index " + tok);
      }
    }
    if (!saw_colon || !(ls >> tok))
      fail("parse", where() + ": expected 'i1 ... ik : coeff'");
    inst.add_term(t, parse_coefficient(tok, where()));
  }
  return inst;
}

void save_samples_csv(const SampleSet& samples, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("input", "cannot write samples file: " + path);
  out << "bitstring,multiplicity,energy\n";
  char buf[64];
  for (const auto& e : samples.entries) {
    std::snprintf(buf, sizeof(buf), "%.17g", e.energy);
    out << e.bitstring << "," << e.multiplicity << "," << buf << "\n";
  }
}

}  // namespace sqc
