#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sqc/orchestrator.hpp"

namespace sqc {

inline constexpr int kResultSchemaVersion = 1;

// Stable-schema result document; key order is fixed so identical runs
// serialize byte-identically.
nlohmann::ordered_json result_to_json(const RunResult& result,
                                      const std::string& approach,
                                      std::uint64_t seed,
                                      const std::string& instance_path);

void write_result_json(const nlohmann::ordered_json& doc,
                       const std::string& path);
nlohmann::ordered_json load_result_json(const std::string& path);

// Binned energy counts of each stage's post-LS distribution over a common
// range; columns stage,backend,bin_lo,bin_hi,count.
void write_histogram_csv(const RunResult& result, const std::string& path,
                         std::uint32_t bins = 40);

// One row per result document, best value per column marked with '*'.
std::string comparison_table(const std::vector<nlohmann::ordered_json>& docs);

}  // namespace sqc
