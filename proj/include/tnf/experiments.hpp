#pragma once

// Seeded experiment suites that combine the other modules and emit report
// tables (JSON and CSV). Rows are sorted by case key so that reports are
// bit-reproducible for a fixed configuration.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tnf/measures.hpp"

namespace tnf::experiments {

using nlohmann::json;

struct ExperimentConfig {
  std::string name;
  std::vector<Alpha> alphas;
  std::vector<std::string> permutations;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 20'240'601;
  std::size_t window = 200;
  std::uint64_t subgroup_samples = 1'000;
  unsigned n = 4;
  std::uint64_t m_max = 50;
};

/// Known suite names: theorem2, theorem1, hierarchy, lemma1.
std::vector<std::string> suite_names();

/// Pinned defaults for a suite. Throws std::invalid_argument for unknown names.
ExperimentConfig default_config(std::string_view name);

/// Overlays keys present in `j` on default_config(name), then checks that
/// every alpha validates and every permutation parses.
ExperimentConfig config_from_json(std::string_view name, const json& j);

struct ReportRow {
  std::string case_key;
  json inputs;
  json values;
  json oracle;
  double deviation = 0.0;
  bool pass = true;
  /// Reported but never counted against the verdict.
  bool informational = false;
  std::uint64_t seed = 0;
  std::string mode = "rational";
  std::string rerun;
};

struct ExperimentReport {
  std::string name;
  std::vector<ReportRow> rows;
  bool verdict = true;
  double wall_seconds = 0.0;
};

ExperimentReport run_theorem2_sweep(const ExperimentConfig& cfg);
ExperimentReport run_theorem1_classification(const ExperimentConfig& cfg);
ExperimentReport run_finite_hierarchy_demo(unsigned n);
ExperimentReport run_lemma1_decay(const ExperimentConfig& cfg);

/// Dispatches on cfg.name.
ExperimentReport run(const ExperimentConfig& cfg);

json to_json(const ExperimentReport& report);
std::string to_csv(const ExperimentReport& report);
/// Writes report.json and report.csv into `dir`, creating it if needed.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

} // namespace tnf::experiments
