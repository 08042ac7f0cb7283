#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wildfire/calibration.hpp"
#include "wildfire/campaign.hpp"
#include "wildfire/cases.hpp"
#include "wildfire/coordinator.hpp"

namespace {

using namespace wildfire;

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

/// Flags shared by `run` and `campaign`; each maps onto one config field.
struct EpisodeFlags {
  int case_id = 1;
  std::string spread = "moderate";
  std::string data_dir = "data/case4";
  std::string surveillance = "uncertainty";
  int asr = 2;
  double quantile = 90.0;
  int rollout_depth = 10;
  std::optional<int> iters;
  std::optional<int> surv_iters;
  std::optional<int> supp_iters;
  std::optional<int> surv_depth;
  std::optional<int> supp_depth;
  std::optional<double> time_limit;
  std::optional<double> p0;
  bool perfect_info = false;
  bool dispatch = false;
  bool no_surveillance = false;
  bool no_boundary_stop = false;
  std::uint64_t seed = 1;
  std::string out = "out";

  void attach(CLI::App* app) {
    app->add_option("--case", case_id, "Benchmark case 1-4")->check(CLI::Range(1, 4));
    app->add_option("--spread", spread, "Spread preset: slow, moderate, rapid, ultrarapid");
    app->add_option("--data-dir", data_dir, "Scenario directory used by case 4");
    app->add_option("--asr", asr, "Action space restriction method 1-3")->check(CLI::Range(1, 3));
    app->add_option("--quantile", quantile, "ASR method 2 distance percentile Q");
    app->add_option("--rollout-depth", rollout_depth, "Internal propagation steps per suppression search level");
    app->add_option("--iters", iters, "MCTS iteration budget for both planners");
    app->add_option("--surv-iters", surv_iters, "Surveillance MCTS iterations (overrides --iters)");
    app->add_option("--supp-iters", supp_iters, "Suppression MCTS iterations (overrides --iters)");
    app->add_option("--surv-depth", surv_depth, "Surveillance search depth");
    app->add_option("--supp-depth", supp_depth, "Suppression search depth");
    app->add_option("--time-limit", time_limit, "Per-decision MCTS time limit in seconds (nondeterministic)");
    app->add_option("--p0", p0, "Override the preset's base ignition probability");
    app->add_flag("--perfect-info", perfect_info, "Belief equals truth every step");
    app->add_flag("--dispatch", dispatch, "Enable early dispatch of a second aircraft");
    app->add_flag("--no-surveillance", no_surveillance, "Disable the drones");
    app->add_flag("--no-boundary-stop", no_boundary_stop, "Keep simulating after the fire reaches the edge");
    app->add_option("--seed", seed, "Episode seed, or the base seed of a campaign");
    app->add_option("--out", out, "Output directory");
  }

  CaseDefinition case_definition() const {
    CaseDefinition def = CaseDefinition::standard(case_id);
    def.preset = parse_spread_preset(spread);
    def.data_dir = data_dir;
    return def;
  }

  EpisodeConfig episode(const CaseDefinition& def) const {
    EpisodeConfig cfg;
    const ScenarioBundle bundle = build_case_bundle(def, seed);
    if (!bundle.overrides.empty()) {
      cfg.propagation = bundle.propagation();
      cfg.penalties = bundle.penalties();
      cfg.ranging = bundle.ranging();
    }
    if (p0) {
      PropagationParams params = cfg.propagation.value_or(PropagationParams::defaults_for(bundle.scenario));
      params.p0 = *p0;
      cfg.propagation = params;
    }
    cfg.surveillance_enabled = !no_surveillance;
    cfg.suppression.asr_method = asr;
    cfg.suppression.quantile = quantile;
    cfg.suppression.rollout = rollout_depth;
    if (iters) cfg.surveillance_mcts.iteration_limit = cfg.suppression.mcts.iteration_limit = *iters;
    if (surv_iters) cfg.surveillance_mcts.iteration_limit = *surv_iters;
    if (supp_iters) cfg.suppression.mcts.iteration_limit = *supp_iters;
    if (surv_depth) cfg.surveillance_mcts.max_depth = *surv_depth;
    if (supp_depth) cfg.suppression.mcts.max_depth = *supp_depth;
    if (time_limit) cfg.surveillance_mcts.time_limit_s = cfg.suppression.mcts.time_limit_s = *time_limit;
    cfg.perfect_information = perfect_info;
    cfg.dispatch.enabled = dispatch;
    cfg.stop_at_boundary = !no_boundary_stop;
    cfg.validate();
    return cfg;
  }
};

std::vector<PolicyVariant> policy_variants(const std::string& policies, const std::string& surveillance) {
  const auto ps = split_list(policies);
  const auto ss = split_list(surveillance);
  if (ps.empty() || ss.empty()) throw ConfigError("--policy and --surveillance need at least one value");
  std::vector<PolicyVariant> out;
  for (const auto& p : ps) {
    for (const auto& s : ss) {
      PolicyVariant v;
      v.suppression = parse_suppression_policy(p);
      v.surveillance = parse_surveillance_kind(s);
      if (ss.size() == 1) {
        v.label = to_string(v.suppression);
      } else if (ps.size() == 1) {
        v.label = to_string(v.surveillance);
      } else {
        v.label = to_string(v.suppression) + "-" + to_string(v.surveillance);
      }
      out.push_back(v);
    }
  }
  return out;
}

std::vector<ReportFormat> parse_formats(const std::string& text) {
  std::vector<ReportFormat> out;
  for (const auto& f : split_list(text)) out.push_back(parse_report_format(f));
  if (out.empty()) throw ConfigError("--format needs at least one of csv, text, svg");
  return out;
}

std::string command_line(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) out += ' ';
    out += argv[i];
  }
  return out;
}

int cmd_run(const EpisodeFlags& flags, const std::string& policy, const std::string& command) {
  const CaseDefinition def = flags.case_definition();
  CampaignConfig campaign;
  campaign.case_def = def;
  campaign.policies = policy_variants(policy, flags.surveillance);
  if (campaign.policies.size() != 1) throw ConfigError("run takes exactly one policy and one surveillance model");
  campaign.episode = flags.episode(def);
  campaign.runs = 1;
  campaign.base_seed = flags.seed;
  campaign.threads = 1;
  const CampaignResult result = run_campaign(campaign);
  const EpisodeLog& log = result.logs.front();

  const std::filesystem::path out_dir = flags.out;
  write_manifest(campaign, command, out_dir);
  const auto path = out_dir / "episode.csv";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  log.write_csv(out);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());

  const EpisodeRow& last = log.final_row();
  std::printf("minutes=%zu destruction=%.3f burning=%d ring_radius_m=%.3f drops=%d outcome=%s%s\n", log.rows.size(),
              last.destruction, last.burning_count, last.ring_radius_m, log.drop_count,
              to_string(log.outcome).c_str(), log.reached_boundary ? " boundary" : "");
  return 0;
}

int cmd_campaign(const EpisodeFlags& flags, const std::string& policies, int runs, int threads,
                 const std::string& formats, const std::string& command) {
  const CaseDefinition def = flags.case_definition();
  CampaignConfig campaign;
  campaign.case_def = def;
  campaign.policies = policy_variants(policies, flags.surveillance);
  campaign.episode = flags.episode(def);
  campaign.runs = runs;
  campaign.base_seed = flags.seed;
  campaign.threads = threads;
  const auto fmts = parse_formats(formats);
  const CampaignResult result = run_campaign(campaign);

  const std::filesystem::path out_dir = flags.out;
  write_manifest(campaign, command, out_dir);
  write_raw_runs(result, out_dir);
  for (auto f : fmts) emit_report(result.report, f, out_dir / "report");
  for (const auto& p : result.report.policies) {
    const Summary& d = p.final_summary(Metric::destruction);
    std::printf("%-24s runs=%d final_destruction=%.3f ci95=%s\n", p.label.c_str(), p.runs, d.mean,
                d.has_ci() ? std::to_string(d.ci_half).c_str() : "undefined");
  }
  for (const auto& t : result.report.tests) {
    std::printf("welch %s vs %s: t=%.4f df=%.2f p=%.6f\n", t.a.c_str(), t.b.c_str(), t.result.t, t.result.df,
                t.result.p_value);
  }
  return 0;
}

int cmd_calibrate(int case_id, const std::string& presets, int seed_count, std::uint64_t base_seed,
                  double tolerance, double lo, double hi, const std::string& out_path, const std::string& data_dir) {
  CaseDefinition def = CaseDefinition::standard(case_id);
  def.data_dir = data_dir;
  const Scenario scenario = build_case(def, base_seed);
  CalibrationConfig cfg;
  cfg.tolerance = tolerance;
  cfg.lo = lo;
  cfg.hi = hi;
  if (seed_count < 1) throw ConfigError("--seeds must be at least 1");
  for (int i = 0; i < seed_count; ++i) cfg.seeds.push_back(base_seed + static_cast<std::uint64_t>(i));
  SpreadTable table;
  for (const auto& name : split_list(presets)) {
    const SpreadPreset preset = parse_spread_preset(name);
    const double target = preset_target_fraction(preset);
    const double p0 = calibrate_spread(scenario, target, cfg);
    const double achieved = mean_burned_fraction(scenario, PropagationParams::defaults_for(scenario), p0, cfg.seeds);
    std::printf("%-10s target=%.3f p0=%.6f burned=%.4f\n", name.c_str(), target, p0, achieved);
    table[preset] = p0;
  }
  write_spread_table(out_path, table);
  return 0;
}

int cmd_report(const std::string& in_dir, const std::string& out_dir, const std::string& formats, int horizon) {
  const auto fmts = parse_formats(formats);
  if (horizon < 1) throw ConfigError("--horizon must be positive");
  const AggregateReport report = aggregate(load_raw_runs(in_dir, horizon), horizon);
  for (auto f : fmts) {
    for (const auto& path : emit_report(report, f, out_dir)) std::printf("%s\n", path.string().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wildfire initial-attack simulation and planning"};
  app.require_subcommand(1);

  EpisodeFlags run_flags;
  std::string run_policy = "localized";
  auto* run = app.add_subcommand("run", "Simulate one episode");
  run_flags.attach(run);
  run->add_option("--policy", run_policy, "none, localized, global, immediate or technique");
  run_flags.surveillance = "uncertainty";
  run->add_option("--surveillance", run_flags.surveillance, "uncertainty or belief");

  EpisodeFlags campaign_flags;
  std::string campaign_policies = "localized,global,immediate,technique";
  int runs = 20;
  int threads = 0;
  std::string formats = "csv,text,svg";
  auto* campaign = app.add_subcommand("campaign", "Run policies over paired seeds and aggregate");
  campaign_flags.attach(campaign);
  campaign->add_option("--policy", campaign_policies, "Comma-separated suppression policies");
  campaign->add_option("--surveillance", campaign_flags.surveillance, "Comma-separated surveillance models");
  campaign->add_option("--runs", runs, "Seeds per policy");
  campaign->add_option("--threads", threads, "Worker threads, 0 for all cores");
  campaign->add_option("--format", formats, "Comma-separated report formats: csv, text, svg");

  int cal_case = 1;
  std::string cal_presets = "slow,moderate,rapid,ultrarapid";
  int cal_seeds = 20;
  std::uint64_t cal_seed = 1000;
  double cal_tol = 0.01, cal_lo = 0.001, cal_hi = 0.5;
  std::string cal_out = "data/spread_presets.txt";
  std::string cal_data = "data/case4";
  auto* calibrate = app.add_subcommand("calibrate", "Fit p0 for each spread preset");
  calibrate->add_option("--case", cal_case, "Benchmark case 1-4")->check(CLI::Range(1, 4));
  calibrate->add_option("--spread", cal_presets, "Comma-separated presets to calibrate");
  calibrate->add_option("--runs", cal_seeds, "Seeds averaged per evaluation");
  calibrate->add_option("--seed", cal_seed, "First calibration seed");
  calibrate->add_option("--tolerance", cal_tol, "Absolute tolerance on the burned fraction");
  calibrate->add_option("--lo", cal_lo, "Lower p0 bound");
  calibrate->add_option("--hi", cal_hi, "Upper p0 bound");
  calibrate->add_option("--out", cal_out, "Output table");
  calibrate->add_option("--data-dir", cal_data, "Scenario directory used by case 4");

  std::string report_in, report_out = "report";
  std::string report_formats = "csv,text,svg";
  int report_horizon = 120;
  auto* report = app.add_subcommand("report", "Aggregate raw runs from a campaign directory");
  report->add_option("--in", report_in, "Campaign output directory")->required();
  report->add_option("--out", report_out, "Report directory");
  report->add_option("--format", report_formats, "Comma-separated report formats: csv, text, svg");
  report->add_option("--horizon", report_horizon, "Minutes per run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  const std::string command = command_line(argc, argv);
  try {
    if (*run) return cmd_run(run_flags, run_policy, command);
    if (*campaign) return cmd_campaign(campaign_flags, campaign_policies, runs, threads, formats, command);
    if (*calibrate) {
      return cmd_calibrate(cal_case, cal_presets, cal_seeds, cal_seed, cal_tol, cal_lo, cal_hi, cal_out, cal_data);
    }
    if (*report) return cmd_report(report_in, report_out, report_formats, report_horizon);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const CalibrationError& e) {
    std::cerr << "calibration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ContractViolation& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const FileFormatError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
