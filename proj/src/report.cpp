#include "sqc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "sqc/error.hpp"

namespace sqc {

using nlohmann::ordered_json;

nlohmann::ordered_json result_to_json(const RunResult& result,
                                      const std::string& approach,
                                      std::uint64_t seed,
                                      const std::string& instance_path) {
  ordered_json doc;
  doc["schema"] = "sqc-result";
  doc["version"] = kResultSchemaVersion;
  doc["approach"] = approach;
  doc["instance"] = instance_path;
  doc["seed"] = seed;
  if (result.e0)
    doc["e0"] = *result.e0;
  else
    doc["e0"] = nullptr;
  doc["total_shots"] = result.total_shots;
  doc["best_energy"] = result.best_energy;
  doc["best_bitstring"] = result.best_bitstring;
  if (result.e0) {
    doc["best_ar"] = result.best_energy / *result.e0;
  } else {
    doc["best_ar"] = nullptr;
  }
  // AR of the final iteration of the final stage
  doc["ar"] = nullptr;
  if (!result.stages.empty() && !result.stages.back().iterations.empty()) {
    const auto& last = result.stages.back().iterations.back();
    if (last.ar) doc["ar"] = *last.ar;
  }

  doc["stages"] = ordered_json::array();
  for (const auto& stage : result.stages) {
    ordered_json s;
    s["backend"] = stage.backend;
    s["shots_used"] = stage.shots_used;
    s["iterations"] = ordered_json::array();
    for (const auto& it : stage.iterations) {
      ordered_json rec;
      rec["iteration"] = it.iteration;
      rec["shots"] = it.shots;
      rec["mean_energy"] = it.mean_energy;
      rec["best_energy"] = it.best_energy;
      rec["best_bitstring"] = it.best_bitstring;
      rec["ar"] = it.ar ? ordered_json(*it.ar) : ordered_json(nullptr);
      rec["best_ar"] =
          it.best_ar ? ordered_json(*it.best_ar) : ordered_json(nullptr);
      rec["bias"] = it.bias_b;
      s["iterations"].push_back(std::move(rec));
    }
    doc["stages"].push_back(std::move(s));
  }
  return doc;
}

void write_result_json(const nlohmann::ordered_json& doc,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("input", "cannot write result file: " + path);
  out << doc.dump(2) << "\n";
}

nlohmann::ordered_json load_result_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("parse", "cannot open result file: " + path);
  ordered_json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    fail("parse", path + ": " + e.what());
  }
  if (!doc.contains("schema") || doc["schema"] != "sqc-result")
    fail("schema", path + ": not an sqc-result document");
  if (!doc.contains("version") ||
      doc["version"].get<int>() != kResultSchemaVersion)
    fail("schema", path + ": unsupported result schema version");
  return doc;
}

void write_histogram_csv(const RunResult& result, const std::string& path,
                         std::uint32_t bins) {
  std::ofstream out(path);
  if (!out) fail("input", "cannot write histogram file: " + path);
  out << "stage,backend,bin_lo,bin_hi,count\n";
  if (result.stages.empty()) return;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& stage : result.stages)
    for (const auto& e : stage.final_samples.entries) {
      lo = std::min(lo, e.energy);
      hi = std::max(hi, e.energy);
    }
  if (!(hi > lo)) hi = lo + 1.0;
  const double width = (hi - lo) / bins;

  char buf[96];
  for (std::size_t s = 0; s < result.stages.size(); ++s) {
    const auto& stage = result.stages[s];
    std::vector<std::uint64_t> counts(bins, 0);
    for (const auto& e : stage.final_samples.entries) {
      auto b = static_cast<std::uint32_t>((e.energy - lo) / width);
      counts[std::min(b, bins - 1)] += e.multiplicity;
    }
    for (std::uint32_t b = 0; b < bins; ++b) {
      std::snprintf(buf, sizeof(buf), "%zu,%s,%.17g,%.17g,%llu\n", s,
                    stage.backend.c_str(), lo + b * width,
                    lo + (b + 1) * width,
                    static_cast<unsigned long long>(counts[b]));
      out << buf;
    }
  }
}

namespace {

std::string fmt_pct(const ordered_json& v) {
  if (v.is_null()) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", v.get<double>() * 100.0);
  return buf;
}

std::string fmt_energy(const ordered_json& v) {
  if (v.is_null()) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v.get<double>());
  return buf;
}

}  // namespace

std::string comparison_table(const std::vector<nlohmann::ordered_json>& docs) {
  struct Row {
    std::string approach;
    std::uint64_t shots;
    ordered_json ar, best_ar, best_energy;
  };
  std::vector<Row> rows;
  for (const auto& d : docs)
    rows.push_back({d["approach"].get<std::string>(),
                    d["total_shots"].get<std::uint64_t>(), d["ar"],
                    d["best_ar"], d["best_energy"]});

  // best per column: fewest shots, highest AR / best AR, lowest best energy
  auto mark = [&](std::size_t i, int col) {
    bool best = true;
    for (const auto& r : rows) {
      switch (col) {
        case 0: best &= rows[i].shots <= r.shots; break;
        case 1:
          if (!r.ar.is_null() &&
              (rows[i].ar.is_null() ||
               rows[i].ar.get<double>() < r.ar.get<double>()))
            best = false;
          break;
        case 2:
          if (!r.best_ar.is_null() &&
              (rows[i].best_ar.is_null() ||
               rows[i].best_ar.get<double>() < r.best_ar.get<double>()))
            best = false;
          break;
        case 3:
          if (!r.best_energy.is_null() &&
              (rows[i].best_energy.is_null() ||
               rows[i].best_energy.get<double>() >
                   r.best_energy.get<double>()))
            best = false;
          break;
      }
    }
    if (col == 1 && rows[i].ar.is_null()) best = false;
    if (col == 2 && rows[i].best_ar.is_null()) best = false;
    if (col == 3 && rows[i].best_energy.is_null()) best = false;
    return best ? "*" : " ";
  };

  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-24s %14s %10s %10s %14s\n", "Approach",
                "Shots", "AR", "Best AR", "Best energy");
  out << buf;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%-24s %13llu%s %9s%s %9s%s %13s%s\n",
                  rows[i].approach.c_str(),
                  static_cast<unsigned long long>(rows[i].shots), mark(i, 0),
                  fmt_pct(rows[i].ar).c_str(), mark(i, 1),
                  fmt_pct(rows[i].best_ar).c_str(), mark(i, 2),
                  fmt_energy(rows[i].best_energy).c_str(), mark(i, 3));
    out << buf;
  }
  return out.str();
}

}  // namespace sqc
