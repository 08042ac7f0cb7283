// Acceptance suite. Each criterion prints one PASS/FAIL line; supporting
// numbers go on indented lines above it. Exit status is the number of failed
// criteria. Arguments select criteria by number (default: all).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "wildfire/campaign.hpp"
#include "wildfire/coordinator.hpp"
#include "wildfire/drops.hpp"
#include "wildfire/propagation.hpp"
#include "wildfire/suppression.hpp"
#include "wildfire/surveillance.hpp"

using namespace wildfire;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

void note(const std::string& line) {
  std::printf("    %s\n", line.c_str());
  std::fflush(stdout);
}

template <typename... Args>
std::string fmtn(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Propagation against closed-form probabilities.

// Neighbour kernel written from the model definition, independent of the
// library. Positions use x east, y north; rows grow southward.
double oracle_neighbor(int xr, int xc, int nr, int nc, const PropagationParams& p, const WindPhase& w,
                       const RealGrid& elev) {
  const double east = xc - nc;
  const double north = nr - xr;
  const double dist = std::sqrt(east * east + north * north);
  const double cosine = (std::cos(w.direction) * east + std::sin(w.direction) * north) / dist;
  const double rise = (elev.at(xr, xc) - elev.at(nr, nc)) / (kCellMeters * dist);
  const double v = p.p0 * (1.0 + p.wind_bias * w.strength * cosine) * (1.0 + p.slope_bias * rise);
  return std::clamp(v, 0.0, 1.0);
}

struct Mini {
  Scenario scenario;
  WorldState world;
  PropagationParams params;
  std::set<std::pair<int, int>> full, partial;
  SuppressionOutcome outcome;
  bool suppress = false;
};

double oracle_burn(const Mini& m, int r, int c) {
  const auto& W = m.world.burning;
  const auto& F = m.world.fuel;
  if (F.at(r, c) == 0) return 0.0;
  double delta = 1.0;
  if (m.suppress && m.full.count({r, c})) delta = 0.0;
  if (m.suppress && m.partial.count({r, c})) delta = m.params.p_partial;
  if (W.at(r, c)) return delta;
  double keep = 1.0;
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      const int nr = r + dr, nc = c + dc;
      if ((dr == 0 && dc == 0) || nr < 0 || nr >= kGridSize || nc < 0 || nc >= kGridSize) continue;
      if (W.at(nr, nc)) keep *= 1.0 - oracle_neighbor(r, c, nr, nc, m.params, m.scenario.wind[0], m.scenario.elevation);
    }
  }
  return delta * (1.0 - keep);
}

int oracle_fuel(const Mini& m, int r, int c) {
  int beta = 0;
  if (m.suppress && m.full.count({r, c})) beta = m.params.gamma_full;
  if (m.suppress && m.partial.count({r, c})) beta = m.params.gamma_partial;
  return std::max(0, m.world.fuel.at(r, c) - m.params.alpha * m.world.burning.at(r, c) - beta);
}

// A 3x3 island of fuel at rows/cols 49..51; the rest of the grid has none.
Mini mini_world(bool suppress) {
  Mini m;
  m.scenario.wind = {{0.7, 0.8, std::nullopt}};
  m.params.p0 = 0.2;
  m.params.wind_bias = 0.5;
  m.params.slope_bias = 1.0;
  m.params.gamma_full = 4;
  m.params.gamma_partial = 1;
  m.params.p_partial = 0.5;
  const int fuel[3][3] = {{3, 0, 5}, {2, 4, 1}, {6, 2, 3}};
  const double elev[3][3] = {{1.0, 0.4, 0.0}, {0.7, 0.2, 0.9}, {0.0, 1.3, 0.5}};
  m.world.burning = BoolGrid{};
  m.world.fuel = FuelGrid(0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      m.world.fuel.at(49 + i, 49 + j) = fuel[i][j];
      m.scenario.elevation.at(49 + i, 49 + j) = elev[i][j];
    }
  }
  m.scenario.initial_fuel = m.world.fuel;
  m.scenario.ignition_cells = {{49, 49}};
  for (auto [r, c] : {std::pair{49, 49}, std::pair{50, 51}, std::pair{51, 50}}) m.world.burning.at(r, c) = 1;
  m.suppress = suppress;
  if (suppress) {
    m.full = {{50, 51}, {49, 51}};
    m.partial = {{51, 50}, {50, 50}, {51, 51}};
    for (auto [r, c] : m.full) m.outcome.full_set.push_back({r, c});
    for (auto [r, c] : m.partial) m.outcome.partial_set.push_back({r, c});
  }
  return m;
}

bool frequencies_match(const Mini& m, int trials, int& worst_cell, double& worst_z, bool& exact_ok) {
  const KernelSet kernels(m.scenario, m.params);
  std::vector<int> hits(9, 0);
  exact_ok = true;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(hash_combine(m.suppress ? 2 : 1, static_cast<std::uint64_t>(trial)));
    const WorldState next = step(m.world, m.suppress ? &m.outcome : nullptr, m.params, kernels, rng);
    for (int i = 0; i < kCellCount; ++i) {
      const auto cell = CellIndex::from_flat(i);
      const bool inside = cell.row() >= 49 && cell.row() <= 51 && cell.col() >= 49 && cell.col() <= 51;
      if (!inside) {
        exact_ok &= next.burning.flat(i) == 0 && next.fuel.flat(i) == 0;
        continue;
      }
      const int k = (cell.row() - 49) * 3 + (cell.col() - 49);
      hits[static_cast<std::size_t>(k)] += next.burning.flat(i);
      exact_ok &= next.fuel.flat(i) == oracle_fuel(m, cell.row(), cell.col());
    }
  }
  worst_z = 0.0;
  worst_cell = -1;
  for (int k = 0; k < 9; ++k) {
    const double p = oracle_burn(m, 49 + k / 3, 49 + k % 3);
    const double freq = static_cast<double>(hits[static_cast<std::size_t>(k)]) / trials;
    if (p == 0.0 || p == 1.0) {
      exact_ok &= freq == p;
      continue;
    }
    const double z = std::abs(freq - p) / std::sqrt(p * (1.0 - p) / trials);
    if (z > worst_z) {
      worst_z = z;
      worst_cell = k;
    }
  }
  return exact_ok && worst_z <= 3.0;
}

Verdict criterion1() {
  bool ok = true;
  for (bool suppress : {false, true}) {
    const Mini m = mini_world(suppress);
    int cell = -1;
    double z = 0.0;
    bool exact = false;
    const bool match = frequencies_match(m, 10000, cell, z, exact);
    note(fmtn("3x3 %s step, 10000 trials: worst |z| = %.2f (cell %d), fuel and zero-probability cells exact: %s",
              suppress ? "suppression" : "plain", z, cell, exact ? "yes" : "no"));
    ok &= match;
  }

  // Random episodes over the shipped abstract cases with random drops.
  long violations = 0;
  long cells_checked = 0;
  std::vector<Scenario> scenarios;
  for (int id = 1; id <= 3; ++id) scenarios.push_back(build_case(CaseDefinition::standard(id), 7));
  const std::array presets{SpreadPreset::slow, SpreadPreset::moderate, SpreadPreset::rapid, SpreadPreset::ultrarapid};
  for (int episode = 0; episode < 1000; ++episode) {
    Rng rng(hash_combine(99, static_cast<std::uint64_t>(episode)));
    Scenario s = scenarios[static_cast<std::size_t>(episode % 3)];
    s.spread_preset = presets[rng.below(presets.size())];
    s.ignition_cells = {{20 + static_cast<int>(rng.below(60)), 20 + static_cast<int>(rng.below(60))}};
    const PropagationParams params = PropagationParams::defaults_for(s);
    const KernelSet kernels(s, params);
    WorldState w = initial_world(s);
    for (int t = 0; t < 40; ++t) {
      SuppressionOutcome out;
      const bool drop = t % 5 == 0 && t > 0;
      if (drop) {
        const SuppressionActionSpec a{{static_cast<int>(rng.below(kGridSize)), static_cast<int>(rng.below(kGridSize))},
                                      kDropTypes[rng.below(kDropTypes.size())]};
        out = footprint(a);
      }
      const WorldState next = step(w, drop ? &out : nullptr, params, kernels, rng);
      for (int i = 0; i < kCellCount; ++i) {
        const bool bad = next.fuel.flat(i) < 0 || next.fuel.flat(i) > w.fuel.flat(i) ||
                         (next.burning.flat(i) && w.fuel.flat(i) == 0) ||
                         (w.burning.flat(i) && w.fuel.flat(i) == 0 && next.burning.flat(i));
        violations += bad;
      }
      cells_checked += kCellCount;
      w = next;
    }
  }
  note(fmtn("1000 random episodes x 40 steps: %ld cell-steps checked, %ld fuel or extinction violations",
            cells_checked, violations));
  ok &= violations == 0;
  return {ok, "Monte Carlo within 3 SE and fuel invariants hold"};
}

// ---------------------------------------------------------------------------
// 2. Depth-1 MCTS against exhaustive expected-reward argmax.

struct Snapshot {
  Scenario scenario;
  PropagationParams params;
  BeliefState belief;
  int minute = 0;
};

Snapshot snapshot(int i) {
  Snapshot snap;
  snap.scenario = build_case(CaseDefinition::standard(1 + i % 3), static_cast<std::uint64_t>(i));
  snap.params = PropagationParams::defaults_for(snap.scenario);
  const KernelSet kernels(snap.scenario, snap.params);
  Rng rng(hash_combine(2024, static_cast<std::uint64_t>(i)));
  snap.minute = 15 + static_cast<int>(rng.below(36));
  WorldState w = initial_world(snap.scenario);
  for (int t = 0; t < snap.minute; ++t) w = step(w, nullptr, snap.params, kernels, rng);
  snap.belief.burning = w.burning;
  const RealGrid growth = uncertainty_growth(w.burning);
  for (int c = 0; c < kCellCount; ++c) {
    snap.belief.uncertainty.flat(c) = std::min(1.0, growth.flat(c) + 0.2 * rng.uniform());
  }
  return snap;
}

std::vector<CellIndex> sampled_cells(const SurveillanceState& s, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> flat;
  ranging_cells(s, rng, {}, flat);
  std::vector<CellIndex> out;
  out.reserve(flat.size());
  for (int f : flat) out.push_back(CellIndex::from_flat(f));
  return out;
}

bool within_five_percent(double chosen, double best) { return chosen >= best - 0.05 * std::abs(best) - 1e-12; }

Verdict criterion2() {
  constexpr int kSnapshots = 20;
  constexpr int kOracleSeeds = 200;
  constexpr int kOracleKeys = 100;
  int surv_ok = 0, supp_ok = 0;
  double surv_gap = 0.0, supp_gap = 0.0;  // worst (best - chosen) / |best|
  for (int i = 0; i < kSnapshots; ++i) {
    const Snapshot snap = snapshot(i);
    Rng rng(hash_combine(77, static_cast<std::uint64_t>(i)));

    // Surveillance over the joint 49-action space.
    SurveillanceState s;
    do {
      s.drone1 = {static_cast<int>(rng.below(10)), static_cast<int>(rng.below(10)), 1 + static_cast<int>(rng.below(7))};
      s.drone2 = {static_cast<int>(rng.below(10)), static_cast<int>(rng.below(10)), 1 + static_cast<int>(rng.below(7))};
    } while (!s.valid());
    std::optional<SuppressionActionSpec> pending;
    // An east-west axis near the north edge leaves the southern airspace
    // rows outside the corridor, so the penalty depends on the action.
    if (i % 2 == 1) {
      pending = SuppressionActionSpec{{static_cast<int>(rng.below(10)), static_cast<int>(rng.below(kGridSize))},
                                      DropType::line_ew};
    }
    std::optional<AxisOfAdvance> aoa;
    if (pending) aoa = axis_of_advance(*pending, snap.scenario.water_source);
    MctsConfig mcts = default_surveillance_mcts();
    mcts.max_depth = 1;
    mcts.iteration_limit = 10000;
    SurveillanceOptions options;
    options.propagation = snap.params;
    options.minute = snap.minute;
    const PenaltyParams penalties = options.penalties;
    const auto chosen = plan_surveillance(snap.belief, s, snap.scenario, pending, SurveillanceModelKind::uncertainty,
                                          mcts, rng, options);
    double best = -1e300, chosen_value = -1e300;
    for (const auto& e : legal_actions(s)) {
      const SurveillanceState next = apply_action(s, e);
      double sum = 0.0;
      for (int seed = 0; seed < kOracleSeeds; ++seed) {
        sum += surveillance_reward(next, snap.belief.uncertainty, sampled_cells(next, hash_combine(5, seed)),
                                   aoa ? &*aoa : nullptr, snap.scenario.origin, penalties);
      }
      const double v = sum / kOracleSeeds;
      best = std::max(best, v);
      if (e == chosen) chosen_value = v;
    }
    surv_ok += within_five_percent(chosen_value, best);
    if (best != 0.0) surv_gap = std::max(surv_gap, (best - chosen_value) / std::abs(best));

    // Suppression over the ASR-restricted set.
    SuppressPlannerConfig cfg;
    cfg.mcts.max_depth = 1;
    cfg.mcts.iteration_limit = 10000;
    SuppressionOptions sopt;
    sopt.propagation = snap.params;
    sopt.minute = snap.minute;
    const auto drop = plan_suppression(snap.belief, snap.scenario, cfg, rng, sopt);
    const auto actions = asr(snap.belief.burning, cfg.asr_method, cfg.quantile, snap.scenario);
    const FuelGrid fuel = InternalModel(snap.scenario, snap.params, snap.minute).uniform_fuel();
    const TemplateSet& templates = TemplateSet::defaults();
    double sbest = -1e300, schosen = -1e300;
    for (const auto& a : actions) {
      double sum = 0.0;
      for (int key = 0; key < kOracleKeys; ++key) {
        sum += localized_reward(snap.belief.burning, fuel, a, snap.scenario, snap.params, cfg.rollout,
                                hash_combine(6, key), templates, snap.minute);
      }
      const double v = sum / kOracleKeys;
      sbest = std::max(sbest, v);
      if (drop && *drop == a) schosen = v;
    }
    const bool ok = drop.has_value() && actions.size() <= 100 && within_five_percent(schosen, sbest);
    supp_ok += ok;
    if (sbest != 0.0) supp_gap = std::max(supp_gap, (sbest - schosen) / std::abs(sbest));
    note(fmtn("snapshot %2d (case %d, minute %2d, %4d burning): surveillance %.1f / %.1f, suppression %.2f / %.2f "
              "over %zu actions",
              i, 1 + i % 3, snap.minute, burning_count(snap.belief.burning), chosen_value, best, schosen, sbest,
              actions.size()));
  }
  note(fmtn("surveillance within 5%%: %d/%d (worst shortfall %.3f); suppression within 5%%: %d/%d (worst shortfall %.3f)",
            surv_ok, kSnapshots, surv_gap, supp_ok, kSnapshots, supp_gap));
  return {surv_ok == kSnapshots && supp_ok == kSnapshots,
          fmtn("%d/%d surveillance, %d/%d suppression snapshots within 5%% of the oracle", surv_ok, kSnapshots, supp_ok,
               kSnapshots)};
}

// ---------------------------------------------------------------------------
// 3. Destruction-minimizing suppression beats both baselines.

Verdict criterion3() {
  CampaignConfig cfg;
  cfg.case_def = CaseDefinition::standard(1);
  cfg.case_def.preset = SpreadPreset::moderate;
  cfg.runs = 20;
  cfg.base_seed = 1;
  cfg.threads = 0;
  cfg.episode.perfect_information = true;
  cfg.episode.surveillance_mcts.iteration_limit = 500;
  cfg.episode.suppression.mcts.iteration_limit = 500;
  cfg.policies = {{"localized", SuppressionPolicy::localized, SurveillanceModelKind::uncertainty},
                  {"global", SuppressionPolicy::global, SurveillanceModelKind::uncertainty},
                  {"immediate", SuppressionPolicy::immediate, SurveillanceModelKind::uncertainty},
                  {"technique", SuppressionPolicy::technique, SurveillanceModelKind::uncertainty}};
  const auto result = run_campaign(cfg);
  const auto& rep = result.report;
  auto mean = [&](const char* label) { return rep.policy(label).final_summary(Metric::destruction).mean; };
  for (const auto& p : rep.policies) {
    const auto& s = p.final_summary(Metric::destruction);
    note(fmtn("%-10s final destruction %8.2f +- %7.2f (95%% CI), escaped %.2f", p.label.c_str(), s.mean, s.ci_half,
              p.outcome_fraction[2]));
  }
  const WelchResult w = welch_test(rep.policy("localized").final_samples[0], rep.policy("immediate").final_samples[0]);
  note(fmtn("Welch localized vs immediate: t = %.3f, df = %.2f, p = %.5f", w.t, w.df, w.p_value));
  bool ok = w.significant() && w.t < 0.0;
  for (const char* ours : {"localized", "global"}) {
    for (const char* base : {"immediate", "technique"}) ok &= mean(ours) < mean(base);
  }
  return {ok, "both destruction-minimizing policies below both baselines, localized vs immediate significant"};
}

// ---------------------------------------------------------------------------
// 4. Uncertainty-driven surveillance versus the belief baseline.

AggregateReport surveillance_campaign(SpreadPreset preset) {
  CampaignConfig cfg;
  cfg.case_def = CaseDefinition::standard(1);
  cfg.case_def.preset = preset;
  cfg.runs = 20;
  cfg.base_seed = 1;
  cfg.threads = 0;
  cfg.episode.stop_at_boundary = false;
  cfg.policies = {{"uncertainty", SuppressionPolicy::none, SurveillanceModelKind::uncertainty},
                  {"belief", SuppressionPolicy::none, SurveillanceModelKind::belief_baseline}};
  return run_campaign(cfg).report;
}

Verdict criterion4() {
  const auto rapid = surveillance_campaign(SpreadPreset::rapid);
  const auto slow = surveillance_campaign(SpreadPreset::slow);
  auto acc = [](const AggregateReport& r, const char* label) {
    return r.policy(label).final_summary(Metric::burning_accuracy);
  };
  const Summary ru = acc(rapid, "uncertainty"), rb = acc(rapid, "belief");
  const Summary su = acc(slow, "uncertainty"), sb = acc(slow, "belief");
  note(fmtn("rapid: uncertainty %.4f +- %.4f, belief %.4f +- %.4f", ru.mean, ru.ci_half, rb.mean, rb.ci_half));
  note(fmtn("slow:  uncertainty %.4f +- %.4f, belief %.4f +- %.4f", su.mean, su.ci_half, sb.mean, sb.ci_half));
  const bool rapid_ok = ru.mean >= rb.mean;
  auto inside = [](double x, const Summary& s) { return x >= s.ci_low() && x <= s.ci_high(); };
  const bool mutual = inside(su.mean, sb) && inside(sb.mean, su);
  const bool overlap = su.ci_low() <= sb.ci_high() && sb.ci_low() <= su.ci_high();
  note(fmtn("slow: each mean inside the other's CI: %s; CIs overlap: %s", mutual ? "yes" : "no",
            overlap ? "yes" : "no"));
  return {rapid_ok && mutual, fmtn("rapid uncertainty >= belief: %s; slow means within each other's CIs: %s",
                                   rapid_ok ? "yes" : "no", mutual ? "yes" : "no")};
}

// ---------------------------------------------------------------------------
// 5. Ring-radius extrapolation on unsuppressed fires.

Verdict criterion5() {
  EpisodeConfig cfg;
  cfg.suppression_policy = SuppressionPolicy::none;
  cfg.surveillance_enabled = false;
  cfg.perfect_information = true;
  cfg.stop_at_boundary = false;
  int good = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Scenario s = build_case(CaseDefinition::standard(1), seed);
    const EpisodeLog log = run_episode(s, cfg, seed);
    const EpisodeRow& last = log.final_row();
    const double realized = last.ring_radius_m;
    RingHistory prefix;
    double worst = 0.0;
    int evaluations = 0;
    int settled = -1;  // first sample minute after which every prediction stays within 10%
    for (const auto& [minute, radius] : log.ring_history.samples()) {
      prefix.add(minute, radius);
      if (prefix.size() < 2) continue;
      const double err = std::abs(predict_ring(prefix, last.t) - realized) / realized;
      if (err > 0.10) settled = -1;
      else if (settled < 0) settled = minute;
      if (minute < 30) continue;
      worst = std::max(worst, err);
      ++evaluations;
    }
    good += evaluations > 0 && worst <= 0.10;
    note(fmtn("seed %2llu: ring at minute %d %.1f m, worst error from minute 30 %.3f over %d evaluations, "
              "within 10%% from minute %d",
              static_cast<unsigned long long>(seed), last.t, realized, worst, evaluations, settled));
  }
  return {good >= 16, fmtn("%d/20 seeds within 10%% from minute 30 onward", good)};
}

// ---------------------------------------------------------------------------
// 6. Structural counts.

Verdict criterion6() {
  const SurveillanceState interior{{3, 3, 3}, {6, 6, 5}};
  const int joint = static_cast<int>(legal_actions(interior).size());

  Scenario fast;
  fast.spread_preset = SpreadPreset::ultrarapid;
  EpisodeConfig cfg;
  cfg.surveillance_enabled = false;
  cfg.suppression_policy = SuppressionPolicy::technique;
  cfg.perfect_information = true;
  cfg.stop_at_boundary = false;
  const EpisodeLog log = run_episode(fast, cfg, 3);
  const int timeline_drops = static_cast<int>(Timeline{}.drop_minutes().size());

  // 200-cell fire: a 10 x 20 block.
  BoolGrid fire;
  for (int r = 45; r < 55; ++r) {
    for (int c = 40; c < 60; ++c) fire.at(r, c) = 1;
  }
  const auto restricted = asr(fire, 2, 90.0, Scenario{});
  const double reduction = 1.0 - static_cast<double>(restricted.size()) / kSuppressionActionCount;

  note(fmtn("joint surveillance actions %d (constant %d); suppression actions %d", joint, kJointActionCount,
            kSuppressionActionCount));
  note(fmtn("timeline drops %d, episode drops %d; ASR method 2 at Q=90 on %d cells keeps %zu actions (%.2f%% cut)",
            timeline_drops, log.drop_count, burning_count(fire), restricted.size(), 100.0 * reduction));
  const bool ok = joint == 49 && kJointActionCount == 49 && kSuppressionActionCount == 50000 && timeline_drops == 21 &&
                  log.drop_count == 21 && reduction >= 0.99;
  return {ok, "49 joint actions, 50,000 drops, 21 drops per aircraft, ASR reduction >= 99%"};
}

// ---------------------------------------------------------------------------
// 7. Byte-identical outputs.

std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    out[fs::relative(e.path(), dir).string()] = s.str();
  }
  return out;
}

std::map<std::string, std::string> campaign_files(int threads, const fs::path& dir) {
  CampaignConfig cfg;
  cfg.case_def = CaseDefinition::standard(2);
  cfg.runs = 4;
  cfg.base_seed = 5;
  cfg.threads = threads;
  cfg.episode.timeline.horizon = 60;
  cfg.episode.surveillance_mcts.iteration_limit = 100;
  cfg.episode.suppression.mcts.iteration_limit = 100;
  cfg.episode.dispatch.enabled = true;
  cfg.policies = {{"localized", SuppressionPolicy::localized, SurveillanceModelKind::uncertainty},
                  {"technique", SuppressionPolicy::technique, SurveillanceModelKind::belief_baseline}};
  fs::remove_all(dir);
  const auto result = run_campaign(cfg);
  write_raw_runs(result, dir);
  for (auto f : {ReportFormat::csv, ReportFormat::text, ReportFormat::svg}) emit_report(result.report, f, dir / "report");
  auto files = tree(dir);
  fs::remove_all(dir);
  return files;
}

Verdict criterion7() {
  const Scenario s = build_case(CaseDefinition::standard(3), 9);
  EpisodeConfig cfg;
  cfg.surveillance_mcts.iteration_limit = 200;
  cfg.suppression.mcts.iteration_limit = 200;
  cfg.dispatch.enabled = true;
  auto csv = [&] {
    std::ostringstream out;
    run_episode(s, cfg, 42).write_csv(out);
    return out.str();
  };
  const bool episode_same = csv() == csv();

  const fs::path base = fs::temp_directory_path() / ("wildfire_acceptance_" + std::to_string(::getpid()));
  const auto a = campaign_files(1, base / "a");
  const auto b = campaign_files(1, base / "b");
  const auto c = campaign_files(3, base / "c");
  fs::remove_all(base);
  note(fmtn("episode CSV identical: %s; campaign files %zu, identical across runs: %s, across 1 vs 3 threads: %s",
            episode_same ? "yes" : "no", a.size(), a == b ? "yes" : "no", a == c ? "yes" : "no"));
  return {episode_same && !a.empty() && a == b && a == c, "episode and campaign outputs byte-identical"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"propagation matches closed form", criterion1},
      {"depth-1 planners match exhaustive oracle", criterion2},
      {"suppression comparison on case 1", criterion3},
      {"surveillance comparison on case 1", criterion4},
      {"early-dispatch ring prediction", criterion5},
      {"structural counts", criterion6},
      {"determinism", criterion7},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    std::printf("criterion %d: %s\n", id, criteria[i].first);
    std::fflush(stdout);
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", id, v.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !v.pass;
  }
  return failures;
}
