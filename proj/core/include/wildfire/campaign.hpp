#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wildfire/cases.hpp"
#include "wildfire/coordinator.hpp"
#include "wildfire/statistics.hpp"

namespace wildfire {

/// One arm of a campaign: a suppression policy paired with a surveillance
/// model, applied on top of the shared episode configuration.
struct PolicyVariant {
  std::string label;
  SuppressionPolicy suppression = SuppressionPolicy::localized;
  SurveillanceModelKind surveillance = SurveillanceModelKind::uncertainty;
};

struct CampaignConfig {
  CaseDefinition case_def = CaseDefinition::standard(1);
  std::vector<PolicyVariant> policies;
  int runs = 20;
  std::uint64_t base_seed = 1;
  EpisodeConfig episode;  // shared overrides
  int threads = 0;        // 0 picks hardware concurrency

  void validate() const;
  /// Episode configuration of one arm.
  EpisodeConfig episode_for(const PolicyVariant& policy) const;
};

enum class Metric { destruction, flame_size, ring_radius, burning_accuracy };
inline constexpr std::array kMetrics{Metric::destruction, Metric::flame_size, Metric::ring_radius,
                                     Metric::burning_accuracy};
std::string to_string(Metric metric);

/// Per-minute metric values of one episode, carried forward past an early
/// stop so every run spans the full horizon.
struct RunRecord {
  std::string label;
  int run = 0;
  std::uint64_t seed = 0;
  OutcomeClass outcome = OutcomeClass::escaped;
  std::array<std::vector<double>, kMetrics.size()> series;

  double final_value(Metric m) const { return series[static_cast<std::size_t>(m)].back(); }
};

RunRecord make_record(const std::string& label, int run, std::uint64_t seed, const EpisodeLog& log, int horizon);

struct PolicyAggregate {
  std::string label;
  int runs = 0;
  std::array<Summary, kMetrics.size()> finals;
  std::array<std::vector<double>, kMetrics.size()> final_samples;  // ordered by run index
  std::array<std::vector<Summary>, kMetrics.size()> series;        // one entry per minute
  std::array<double, 3> outcome_fraction{};                        // fully_suppressed, contained, escaped

  const Summary& final_summary(Metric m) const { return finals[static_cast<std::size_t>(m)]; }
};

struct PairwiseTest {
  std::string a, b;
  Metric metric = Metric::destruction;
  WelchResult result;
};

struct AggregateReport {
  std::vector<PolicyAggregate> policies;
  std::vector<PairwiseTest> tests;  // final destruction, every pair, needs runs >= 2
  int horizon = 0;

  const PolicyAggregate& policy(const std::string& label) const;
};

/// Deterministic reduce: records are grouped by label in first-seen order and
/// sorted by run index within a label.
AggregateReport aggregate(std::vector<RunRecord> records, int horizon);

struct CampaignResult {
  AggregateReport report;
  std::vector<RunRecord> records;  // policy-major, run-minor
  std::vector<EpisodeLog> logs;    // parallel to records
};

/// Runs every policy on seeds base_seed + run. Episodes execute in parallel;
/// results do not depend on the thread count.
CampaignResult run_campaign(const CampaignConfig& cfg);

/// Raw per-episode CSVs under dir/runs/<label>/run_<index>.csv.
void write_raw_runs(const CampaignResult& result, const std::filesystem::path& dir);
/// Reads raw CSVs written by write_raw_runs back into records.
std::vector<RunRecord> load_raw_runs(const std::filesystem::path& dir, int horizon);

enum class ReportFormat { csv, text, svg };
ReportFormat parse_report_format(const std::string& text);

/// Writes the report under dir. csv: one <metric>.csv per metric with one row
/// per minute, plus finals.csv, outcomes.csv and tests.csv. text: summary.txt.
/// svg: series_<label>_<metric>.svg per policy and metric, plus
/// summary_final_destruction.svg and summary_outcomes.svg. Throws IoError
/// when a file cannot be written. Returns the files written.
std::vector<std::filesystem::path> emit_report(const AggregateReport& report, ReportFormat format,
                                               const std::filesystem::path& dir);

/// 64-bit FNV-1a digest, used for the manifest's config hash.
std::uint64_t fnv1a(std::string_view bytes);

/// Canonical JSON text of a campaign configuration.
std::string config_json(const CampaignConfig& cfg);

/// manifest.json: inputs, seeds, canonical config and its hash.
void write_manifest(const CampaignConfig& cfg, const std::string& command, const std::filesystem::path& dir);

}  // namespace wildfire
