#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "wildfire/calibration.hpp"
#include "wildfire/campaign.hpp"
#include "wildfire/cases.hpp"
#include "wildfire/scenario_io.hpp"
#include "wildfire/statistics.hpp"
#include "wildfire/suppression.hpp"

using namespace wildfire;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("wildfire_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Every regular file under dir, keyed by relative path.
std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = slurp(e.path());
  }
  return out;
}

std::string grid_text(double value, int rows = kGridSize, int cols = kGridSize) {
  std::ostringstream s;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) s << (c ? "," : "") << value;
    s << '\n';
  }
  return s.str();
}

// Two-sided Student-t tail by Simpson integration of the density.
double t_two_sided_p(double t, double df) {
  const double logc = std::lgamma((df + 1) / 2) - std::lgamma(df / 2) - 0.5 * std::log(df * M_PI);
  auto density = [&](double x) { return std::exp(logc - (df + 1) / 2 * std::log1p(x * x / df)); };
  const int n = 200000;
  const double h = std::abs(t) / n;
  double sum = density(0) + density(std::abs(t));
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4 : 2) * density(i * h);
  return 1.0 - 2.0 * sum * h / 3.0;
}

CampaignConfig small_campaign() {
  CampaignConfig cfg;
  cfg.case_def = CaseDefinition::standard(1);
  cfg.runs = 3;
  cfg.base_seed = 11;
  cfg.threads = 1;
  cfg.episode.timeline.horizon = 30;
  cfg.episode.surveillance_mcts.iteration_limit = 30;
  cfg.episode.surveillance_mcts.max_depth = 2;
  cfg.episode.suppression.mcts.iteration_limit = 30;
  cfg.episode.suppression.rollout = 4;
  cfg.policies = {{"localized", SuppressionPolicy::localized, SurveillanceModelKind::uncertainty},
                  {"none", SuppressionPolicy::none, SurveillanceModelKind::uncertainty}};
  return cfg;
}

}  // namespace

TEST(ScenarioIo, DirectoryRoundTrip) {
  TempDir dir;
  ScenarioBundle bundle = build_case_bundle(CaseDefinition::standard(3), 5);
  bundle.scenario.wind = {{0.5, 0.3, 40}, {2.0, 0.9, std::nullopt}};
  bundle.overrides["p0"] = 0.061;
  bundle.overrides["tau4"] = 0.02;
  write_scenario_dir(bundle, dir.path());
  const ScenarioBundle back = load_scenario_dir(dir.path());
  EXPECT_EQ(back.scenario.initial_fuel, bundle.scenario.initial_fuel);
  EXPECT_EQ(back.scenario.ignition_cells, bundle.scenario.ignition_cells);
  EXPECT_EQ(back.scenario.origin, bundle.scenario.origin);
  EXPECT_EQ(back.overrides, bundle.overrides);
  EXPECT_EQ(back.propagation().p0, 0.061);
  EXPECT_EQ(back.penalties().tau4, 0.02);
  ASSERT_EQ(back.scenario.wind.size(), 2u);
  EXPECT_NEAR(back.scenario.wind[1].direction, 2.0, 1e-9);
  EXPECT_EQ(back.scenario.wind[0].switch_time, 40);
  for (int i = 0; i < kCellCount; ++i) {
    EXPECT_NEAR(back.scenario.elevation.flat(i), bundle.scenario.elevation.flat(i), 1e-4);
    EXPECT_NEAR(back.scenario.resources.flat(i), bundle.scenario.resources.flat(i), 1e-4);
  }
}

TEST(ScenarioIo, GridErrors) {
  {
    std::istringstream in(grid_text(1.0, 99));
    EXPECT_THROW(read_grid_csv(in, "elevation"), FileFormatError);
  }
  {
    std::istringstream in(grid_text(1.0, 100, 101));
    EXPECT_THROW(read_grid_csv(in, "elevation"), FileFormatError);
  }
  {
    std::string text = grid_text(1.0);
    text[0] = 'x';
    std::istringstream in(text);
    try {
      read_grid_csv(in, "resources");
      FAIL() << "expected FileFormatError";
    } catch (const FileFormatError& e) {
      EXPECT_NE(std::string(e.what()).find("resources"), std::string::npos);
    }
  }
  std::istringstream ok(grid_text(2.5));
  EXPECT_EQ(read_grid_csv(ok, "elevation").at(99, 99), 2.5);
}

TEST(ScenarioIo, KeyFileParsing) {
  ScenarioBundle b;
  std::istringstream good(
      "# comment\n"
      "spread_preset = rapid\n"
      "origin = 10,20\n"
      "ignition = 10,20; 11,20\n"
      "water_source = -100,50\n"
      "wind.0.direction_deg = 90\n"
      "wind.0.strength = 0.4\n"
      "wind.0.switch_time = none\n"
      "alpha = 2\n");
  parse_scenario_keys(good, b);
  EXPECT_EQ(b.scenario.spread_preset, SpreadPreset::rapid);
  EXPECT_EQ(b.scenario.origin, CellIndex(10, 20));
  EXPECT_EQ(b.scenario.ignition_cells.size(), 2u);
  EXPECT_NEAR(b.scenario.wind[0].direction, M_PI / 2, 1e-12);
  EXPECT_EQ(b.propagation().alpha, 2);

  const auto fails = [](const std::string& text) {
    ScenarioBundle x;
    std::istringstream in(text);
    EXPECT_THROW(parse_scenario_keys(in, x), FileFormatError) << text;
  };
  fails("colour = red\n");
  fails("origin = 10\n");
  fails("origin = 100,3\n");
  fails("spread_preset = blazing\n");
  fails("wind.1.strength = 0.5\n");
  fails("just some words\n");
}

TEST(ScenarioIo, MissingLayerIsNamed) {
  TempDir dir;
  write_scenario_dir(build_case_bundle(CaseDefinition::standard(1), 1), dir.path());
  fs::remove(dir.path() / "resources.csv");
  try {
    load_scenario_dir(dir.path());
    FAIL() << "expected FileFormatError";
  } catch (const FileFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("resources"), std::string::npos);
  }
}

TEST(Cases, CaseOneIsFlatWithOneArea) {
  const Scenario s = build_case(CaseDefinition::standard(1), 1);
  const double z0 = s.elevation.flat(0);
  for (int i = 0; i < kCellCount; ++i) EXPECT_EQ(s.elevation.flat(i), z0);
  EXPECT_EQ(high_value_areas(s.resources).size(), 1u);
  EXPECT_EQ(s.wind.size(), 1u);
}

TEST(Cases, CaseTwoShiftDependsOnlyOnSeed) {
  const auto def = CaseDefinition::standard(2);
  const Scenario a = build_case(def, 1);
  const Scenario b = build_case(def, 2);
  EXPECT_EQ(a.resources, b.resources);
  EXPECT_EQ(a.elevation, b.elevation);
  EXPECT_EQ(a.initial_fuel, b.initial_fuel);
  EXPECT_EQ(high_value_areas(a.resources).size(), 2u);
  EXPECT_EQ(a.wind_at(59), b.wind_at(59));
  EXPECT_NE(a.wind_at(60).direction, b.wind_at(60).direction);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Scenario s = build_case(def, seed);
    const double shift = std::remainder(s.wind_at(60).direction - s.wind_at(0).direction, 2 * M_PI);
    EXPECT_GE(std::abs(shift), M_PI / 2 - 1e-9);
  }
  EXPECT_EQ(build_case(def, 7), build_case(def, 7));
}

TEST(Cases, CaseThreeHasHillsAndThreeAreas) {
  const Scenario s = build_case(CaseDefinition::standard(3), 1);
  EXPECT_EQ(high_value_areas(s.resources).size(), 3u);
  const auto z = s.elevation.values();
  EXPECT_GT(*std::max_element(z.begin(), z.end()) - *std::min_element(z.begin(), z.end()), 10.0);
}

TEST(Cases, CaseFourReadsShippedData) {
  auto def = CaseDefinition::standard(4);
  def.data_dir = fs::path(WILDFIRE_SOURCE_DIR) / "data" / "case4";
  const Scenario s = build_case(def, 1);
  EXPECT_NO_THROW(s.validate());
  EXPECT_FALSE(high_value_areas(s.resources).empty());
  def.preset = SpreadPreset::rapid;
  EXPECT_EQ(build_case(def, 1).spread_preset, SpreadPreset::rapid);
  def.data_dir = "/nonexistent/case4";
  EXPECT_THROW(build_case(def, 1), FileFormatError);
}

TEST(Cases, BadIdRejected) {
  EXPECT_THROW(CaseDefinition::standard(5), ConfigError);
  CaseDefinition def;
  def.id = 0;
  EXPECT_THROW(build_case(def, 1), ConfigError);
}

TEST(Statistics, HandComputedSummary) {
  const std::vector<double> xs{1, 2, 3, 4, 5};
  const Summary s = summarize(xs);
  EXPECT_EQ(s.n, 5u);
  EXPECT_DOUBLE_EQ(s.mean, 3.0);
  EXPECT_NEAR(s.sd, std::sqrt(2.5), 1e-12);
  // t(0.975, 4) = 2.776445105 from standard tables.
  EXPECT_NEAR(s.ci_half, 2.776445105 * std::sqrt(2.5) / std::sqrt(5.0), 1e-8);
  EXPECT_TRUE(s.has_ci());
}

TEST(Statistics, SmallSamples) {
  const std::vector<double> one{4.0};
  const Summary s = summarize(one);
  EXPECT_EQ(s.mean, 4.0);
  EXPECT_FALSE(s.has_ci());
  EXPECT_TRUE(std::isnan(s.ci_half));
  EXPECT_TRUE(std::isnan(summarize(std::vector<double>{}).mean));
}

TEST(Statistics, WelchAgainstIndependentIntegration) {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> b{2, 4, 6, 8, 10};
  const WelchResult w = welch_test(a, b);
  EXPECT_NEAR(w.t, -3.0 / std::sqrt(2.5), 1e-12);
  EXPECT_NEAR(w.df, 6.25 / (0.25 / 4 + 4.0 / 4), 1e-12);
  EXPECT_NEAR(w.p_value, t_two_sided_p(w.t, w.df), 1e-8);
  EXPECT_FALSE(w.significant());
}

TEST(Statistics, WelchDegenerateCases) {
  const std::vector<double> same{2, 2, 2};
  const std::vector<double> other{3, 3, 3};
  EXPECT_EQ(welch_test(same, same).p_value, 1.0);
  const WelchResult d = welch_test(same, other);
  EXPECT_EQ(d.p_value, 0.0);
  EXPECT_TRUE(std::isinf(d.t));
  EXPECT_THROW(welch_test(std::vector<double>{1.0}, other), ContractViolation);
}

TEST(Calibration, TargetZeroReturnsLowerBound) {
  const Scenario s = build_case(CaseDefinition::standard(1), 1);
  CalibrationConfig cfg;
  cfg.seeds = {1, 2};
  cfg.horizon = 30;
  cfg.lo = 1e-6;
  cfg.tolerance = 0.01;
  EXPECT_EQ(calibrate_spread(s, 0.0, cfg), cfg.lo);
}

TEST(Calibration, MonotoneInTarget) {
  const Scenario s = build_case(CaseDefinition::standard(1), 1);
  CalibrationConfig cfg;
  cfg.seeds = {1, 2, 3, 4};
  cfg.tolerance = 0.01;
  double prev = 0.0;
  for (double target : {0.05, 0.2, 0.5}) {
    const double p0 = calibrate_spread(s, target, cfg);
    EXPECT_GT(p0, prev) << target;
    prev = p0;
  }
}

TEST(Calibration, HoldoutWithinTwiceTolerance) {
  Scenario s = build_case(CaseDefinition::standard(1), 1);
  CalibrationConfig cfg;
  for (std::uint64_t k = 1; k <= 20; ++k) cfg.seeds.push_back(k);
  cfg.tolerance = 0.02;
  const double p0 = calibrate_spread(s, 0.25, cfg);
  std::vector<std::uint64_t> fresh;
  for (std::uint64_t k = 1001; k <= 1020; ++k) fresh.push_back(k);
  const double f = mean_burned_fraction(s, PropagationParams::defaults_for(s), p0, fresh);
  EXPECT_NEAR(f, 0.25, 2 * cfg.tolerance);
}

TEST(Calibration, ShippedTableMatchesCompiledPresets) {
  std::ifstream in(fs::path(WILDFIRE_SOURCE_DIR) / "data" / "spread_presets.txt");
  ASSERT_TRUE(in);
  const SpreadTable table = read_spread_table(in);
  for (auto p : {SpreadPreset::slow, SpreadPreset::moderate, SpreadPreset::rapid, SpreadPreset::ultrarapid}) {
    EXPECT_NEAR(table.at(p), spread_p0(p), 1e-6) << to_string(p);
  }
}

TEST(Calibration, ErrorsAndTableRoundTrip) {
  const Scenario s = build_case(CaseDefinition::standard(1), 1);
  CalibrationConfig cfg;
  cfg.seeds = {1};
  cfg.hi = 0.002;
  EXPECT_THROW(calibrate_spread(s, 0.5, cfg), CalibrationError);
  cfg.seeds.clear();
  EXPECT_THROW(cfg.validate(), ConfigError);

  const SpreadTable table{{SpreadPreset::slow, 0.01}, {SpreadPreset::rapid, 0.07}};
  std::stringstream io;
  write_spread_table(io, table);
  EXPECT_EQ(read_spread_table(io), table);
  std::istringstream bad("slow 0.01\nfast nope\n");
  EXPECT_THROW(read_spread_table(bad), FileFormatError);
}

TEST(Campaign, SingleRunHasUndefinedCi) {
  CampaignConfig cfg = small_campaign();
  cfg.runs = 1;
  const auto result = run_campaign(cfg);
  const auto& agg = result.report.policy("localized");
  EXPECT_EQ(agg.runs, 1);
  EXPECT_FALSE(agg.final_summary(Metric::destruction).has_ci());
  EXPECT_EQ(agg.final_summary(Metric::destruction).mean, result.logs[0].final_row().destruction);
  EXPECT_TRUE(result.report.tests.empty());
}

TEST(Campaign, IdenticalArmsGiveIdenticalAggregates) {
  CampaignConfig cfg = small_campaign();
  cfg.policies = {{"a", SuppressionPolicy::global, SurveillanceModelKind::uncertainty},
                  {"b", SuppressionPolicy::global, SurveillanceModelKind::uncertainty}};
  const auto result = run_campaign(cfg);
  const auto& a = result.report.policy("a");
  const auto& b = result.report.policy("b");
  for (std::size_t m = 0; m < kMetrics.size(); ++m) {
    EXPECT_EQ(a.final_samples[m], b.final_samples[m]);
  }
  ASSERT_EQ(result.report.tests.size(), 1u);
  EXPECT_EQ(result.report.tests[0].result.p_value, 1.0);
}

TEST(Campaign, MeansEqualRawFinals) {
  const auto result = run_campaign(small_campaign());
  for (const auto& agg : result.report.policies) {
    for (auto m : kMetrics) {
      double sum = 0.0;
      int n = 0;
      for (const auto& r : result.records) {
        if (r.label != agg.label) continue;
        sum += r.final_value(m);
        ++n;
      }
      EXPECT_NEAR(agg.final_summary(m).mean, sum / n, 1e-12) << agg.label << " " << to_string(m);
    }
  }
}

TEST(Campaign, PairedSeedsShareWorldBeforeFirstDrop) {
  const auto cfg = small_campaign();
  const auto result = run_campaign(cfg);
  ASSERT_EQ(result.logs.size(), 6u);
  // Row t is logged after minute t's drop, so the first drop shows at manned_arrival.
  for (int run = 0; run < cfg.runs; ++run) {
    const auto& sup = result.logs[static_cast<std::size_t>(run)];
    const auto& none = result.logs[static_cast<std::size_t>(cfg.runs + run)];
    for (int t = 0; t < cfg.episode.timeline.manned_arrival; ++t) {
      EXPECT_EQ(sup.rows[t].burning_count, none.rows[t].burning_count) << "run " << run << " t " << t;
    }
  }
}

TEST(Campaign, DeterministicAndThreadIndependent) {
  TempDir a, b;
  CampaignConfig cfg = small_campaign();
  write_raw_runs(run_campaign(cfg), a.path());
  cfg.threads = 3;
  write_raw_runs(run_campaign(cfg), b.path());
  const auto ta = tree(a.path());
  EXPECT_EQ(ta.size(), 6u);
  EXPECT_EQ(ta, tree(b.path()));
}

TEST(Campaign, RawRunsReloadToSameReport) {
  TempDir dir;
  const auto cfg = small_campaign();
  const auto result = run_campaign(cfg);
  write_raw_runs(result, dir.path());
  const auto records = load_raw_runs(dir.path(), cfg.episode.timeline.horizon);
  const auto again = aggregate(records, cfg.episode.timeline.horizon);
  ASSERT_EQ(again.policies.size(), result.report.policies.size());
  for (std::size_t i = 0; i < again.policies.size(); ++i) {
    for (std::size_t m = 0; m < kMetrics.size(); ++m) {
      const auto& x = again.policies[i].final_samples[m];
      const auto& y = result.report.policies[i].final_samples[m];
      ASSERT_EQ(x.size(), y.size());
      for (std::size_t k = 0; k < x.size(); ++k) EXPECT_NEAR(x[k], y[k], 1e-6);
    }
  }
}

TEST(Campaign, ConfigValidation) {
  CampaignConfig cfg = small_campaign();
  cfg.runs = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = small_campaign();
  cfg.policies.clear();
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = small_campaign();
  cfg.policies[1].label = cfg.policies[0].label;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Report, CsvHasOneRowPerMinute) {
  TempDir dir;
  const auto cfg = small_campaign();
  const auto result = run_campaign(cfg);
  const auto files = emit_report(result.report, ReportFormat::csv, dir.path());
  for (auto m : kMetrics) {
    const auto text = slurp(dir.path() / (to_string(m) + ".csv"));
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), cfg.episode.timeline.horizon + 1) << to_string(m);
  }
  EXPECT_TRUE(fs::exists(dir.path() / "finals.csv"));
  EXPECT_TRUE(fs::exists(dir.path() / "tests.csv"));
}

TEST(Report, EmptyReportWritesHeadersOnly) {
  TempDir dir;
  AggregateReport empty;
  empty.horizon = 30;
  emit_report(empty, ReportFormat::csv, dir.path());
  for (auto m : kMetrics) {
    const auto text = slurp(dir.path() / (to_string(m) + ".csv"));
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1) << text;
  }
}

TEST(Report, SvgCountIsPoliciesTimesMetrics) {
  TempDir dir;
  const auto result = run_campaign(small_campaign());
  emit_report(result.report, ReportFormat::svg, dir.path());
  int series = 0;
  for (const auto& e : fs::directory_iterator(dir.path())) {
    if (e.path().filename().string().rfind("series_", 0) == 0) ++series;
  }
  EXPECT_EQ(series, static_cast<int>(result.report.policies.size() * kMetrics.size()));
}

TEST(Report, UnwritablePathThrows) {
  TempDir dir;
  const fs::path blocker = dir.path() / "file";
  std::ofstream(blocker) << "x";
  EXPECT_THROW(emit_report(AggregateReport{}, ReportFormat::text, blocker / "sub"), IoError);
}

TEST(Report, FormatNames) {
  EXPECT_EQ(parse_report_format("csv"), ReportFormat::csv);
  EXPECT_EQ(parse_report_format("svg"), ReportFormat::svg);
  EXPECT_THROW(parse_report_format("pdf"), ConfigError);
}

TEST(Manifest, HashIsStable) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  const auto cfg = small_campaign();
  EXPECT_EQ(config_json(cfg), config_json(cfg));
  auto other = cfg;
  other.runs = 4;
  EXPECT_NE(config_json(cfg), config_json(other));
  TempDir dir;
  write_manifest(cfg, "campaign", dir.path());
  const auto text = slurp(dir.path() / "manifest.json");
  EXPECT_NE(text.find("config_hash"), std::string::npos);
  EXPECT_NE(text.find("seeds"), std::string::npos);
}
