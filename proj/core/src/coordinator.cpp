#include "wildfire/coordinator.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace wildfire {

namespace {

double jaccard(const BoolGrid& a, const BoolGrid& b) {
  int both = 0, either = 0;
  for (int i = 0; i < kCellCount; ++i) {
    const bool x = a.flat(i) != 0, y = b.flat(i) != 0;
    both += (x && y) ? 1 : 0;
    either += (x || y) ? 1 : 0;
  }
  return either == 0 ? 1.0 : static_cast<double>(both) / either;
}

double agreement(const BoolGrid& a, const BoolGrid& b) {
  int same = 0;
  for (int i = 0; i < kCellCount; ++i) same += ((a.flat(i) != 0) == (b.flat(i) != 0)) ? 1 : 0;
  return static_cast<double>(same) / kCellCount;
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string xyz(const DronePosition& d) {
  return std::to_string(d.x) + ";" + std::to_string(d.y) + ";" + std::to_string(d.z);
}

// One suppression aircraft with its own planner state.
struct Aircraft {
  Rng rng;
  TechniqueMemory technique;
};

DropChoice choose_drop(SuppressionPolicy policy, const BeliefState& belief, const FuelGrid& fuel,
                       const Scenario& scenario, const EpisodeConfig& config, const PropagationParams& params,
                       int minute, Aircraft& aircraft) {
  switch (policy) {
    case SuppressionPolicy::none: return std::nullopt;
    case SuppressionPolicy::technique: return firefighting_technique(belief.burning, scenario, aircraft.technique);
    case SuppressionPolicy::localized:
    case SuppressionPolicy::global:
    case SuppressionPolicy::immediate: break;
  }
  SuppressPlannerConfig cfg = config.suppression;
  if (policy == SuppressionPolicy::localized) cfg.reward = SuppressionRewardKind::localized;
  if (policy == SuppressionPolicy::global) cfg.reward = SuppressionRewardKind::global;
  if (policy == SuppressionPolicy::immediate) cfg.reward = SuppressionRewardKind::immediate;
  SuppressionOptions options;
  options.propagation = params;
  options.minute = minute;
  options.estimated_fuel = &fuel;
  options.templates = &config.templates;
  return plan_suppression(belief, scenario, cfg, aircraft.rng, options);
}

}  // namespace

void Timeline::validate() const {
  if (!(0 <= uav_arrival && uav_arrival <= manned_arrival && manned_arrival <= horizon)) {
    throw ConfigError("timeline needs 0 <= uav_arrival <= manned_arrival <= horizon");
  }
  if (k < 1) throw ConfigError("drop cadence k must be at least 1");
}

std::vector<int> Timeline::drop_minutes() const {
  std::vector<int> out;
  for (int t = manned_arrival; t < horizon; t += k) out.push_back(t);
  return out;
}

void RingHistory::add(int minute, double radius_m) {
  require(samples_.empty() || minute > samples_.back().first, "ring history minutes must strictly increase");
  samples_.emplace_back(minute, radius_m);
}

double predict_ring(const RingHistory& history, int at_minute) {
  const auto& s = history.samples();
  if (s.size() < 2) throw InsufficientHistory("ring prediction needs at least two samples");
  // Centred sums keep the normal equations well conditioned.
  double mx = 0.0, my = 0.0;
  for (const auto& [t, r] : s) {
    mx += t;
    my += r;
  }
  const double n = static_cast<double>(s.size());
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [t, r] : s) {
    sxy += (t - mx) * (r - my);
    sxx += (t - mx) * (t - mx);
  }
  const double slope = sxy / sxx;
  return my + slope * (at_minute - mx);
}

void DispatchPolicy::validate() const {
  if (time_threshold < 0.0 || ring_threshold < 0.0) throw ConfigError("dispatch thresholds must be non-negative");
}

bool early_dispatch_decision(const RingHistory& history, int minute, const DispatchPolicy& policy, int horizon) {
  if (!policy.enabled || minute <= policy.time_threshold || history.size() < 2) return false;
  return predict_ring(history, horizon) > policy.ring_threshold;
}

bool DispatchLatch::update(const RingHistory& history, int minute, const DispatchPolicy& policy, int horizon) {
  if (!minute_ && early_dispatch_decision(history, minute, policy, horizon)) minute_ = minute;
  return dispatched();
}

std::string to_string(OutcomeClass outcome) {
  switch (outcome) {
    case OutcomeClass::fully_suppressed: return "fully_suppressed";
    case OutcomeClass::contained: return "contained";
    case OutcomeClass::escaped: return "escaped";
  }
  return "escaped";
}

std::string to_string(SuppressionPolicy policy) {
  switch (policy) {
    case SuppressionPolicy::none: return "none";
    case SuppressionPolicy::localized: return "localized";
    case SuppressionPolicy::global: return "global";
    case SuppressionPolicy::immediate: return "immediate";
    case SuppressionPolicy::technique: return "technique";
  }
  return "none";
}

SuppressionPolicy parse_suppression_policy(const std::string& text) {
  for (auto p : {SuppressionPolicy::none, SuppressionPolicy::localized, SuppressionPolicy::global,
                 SuppressionPolicy::immediate, SuppressionPolicy::technique}) {
    if (to_string(p) == text) return p;
  }
  throw ConfigError("unknown suppression policy '" + text + "'");
}

void EpisodeConfig::validate() const {
  timeline.validate();
  dispatch.validate();
  try {
    surveillance_mcts.validate();
    penalties.validate();
    ranging.validate();
    if (propagation) propagation->validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
  if (suppression_policy != SuppressionPolicy::none) suppression.validate();
  if (!drone_start.valid()) throw ConfigError("drone start positions must be distinct and inside the airspace");
}

int containment_window(SpreadPreset preset) {
  return (preset == SpreadPreset::rapid || preset == SpreadPreset::ultrarapid) ? 3 : 4;
}

OutcomeClass classify_outcome(const EpisodeLog& log) {
  if (log.rows.empty()) return OutcomeClass::escaped;
  const EpisodeRow& last = log.final_row();
  if (last.burning_count == 0) return OutcomeClass::fully_suppressed;
  if (log.reached_boundary || last.ring_radius_m > kContainmentRingBound) return OutcomeClass::escaped;
  std::vector<double> samples;
  for (const auto& row : log.rows) {
    if (row.suppression_step) samples.push_back(row.ring_radius_m);
  }
  if (samples.empty()) return OutcomeClass::escaped;
  const std::size_t w = std::min<std::size_t>(samples.size(), static_cast<std::size_t>(containment_window(log.preset)));
  double mean = 0.0;
  for (std::size_t i = samples.size() - w; i < samples.size(); ++i) mean += samples[i];
  mean /= static_cast<double>(w);
  if (mean <= 0.0) return OutcomeClass::escaped;
  return std::abs(last.ring_radius_m - mean) / mean <= 0.10 ? OutcomeClass::contained : OutcomeClass::escaped;
}

void EpisodeLog::write_csv(std::ostream& out) const {
  out << "t,burning_count,destruction,ring_radius_m,drone1_xyz,drone2_xyz,drop_center,drop_type,dispatch_flag,"
         "outcome_at_end,burning_accuracy,belief_accuracy\n";
  const std::string outcome_text = to_string(outcome);
  for (const auto& row : rows) {
    std::string centers, types;
    for (std::size_t i = 0; i < row.drops.size(); ++i) {
      if (i > 0) {
        centers += '|';
        types += '|';
      }
      centers += std::to_string(row.drops[i].center.row()) + ";" + std::to_string(row.drops[i].center.col());
      types += to_string(row.drops[i].drop);
    }
    out << row.t << ',' << row.burning_count << ',' << fixed(row.destruction) << ',' << fixed(row.ring_radius_m)
        << ',' << (row.drones ? xyz(row.drones->drone1) : "") << ',' << (row.drones ? xyz(row.drones->drone2) : "")
        << ',' << centers << ',' << types << ',' << (row.dispatched ? 1 : 0) << ',' << outcome_text << ','
        << fixed(row.burning_accuracy) << ',' << fixed(row.belief_accuracy) << '\n';
  }
}

EpisodeLog run_episode(const Scenario& scenario, const EpisodeConfig& config, std::uint64_t seed) {
  scenario.validate();
  config.validate();
  const Timeline& tl = config.timeline;
  const PropagationParams params = config.propagation.value_or(PropagationParams::defaults_for(scenario));
  params.validate();
  const KernelSet kernels(scenario, params);

  Rng world_rng(stream_seed(seed, 1));
  Rng surveillance_rng(stream_seed(seed, 2));
  Rng ranging_rng(stream_seed(seed, 4));
  Aircraft primary{Rng(stream_seed(seed, 3)), {}};
  Aircraft secondary{Rng(stream_seed(seed, 5)), {}};

  WorldState world = initial_world(scenario);
  BeliefState belief;
  belief.burning = world.burning;
  FuelGrid estimated_fuel(scenario.median_initial_fuel());
  BoolGrid ever_burned = world.burning;
  double destruction = instantaneous_destruction(ever_burned, scenario.resources);

  std::optional<SurveillanceState> drones;
  DispatchLatch latch;
  EpisodeLog log;
  log.preset = scenario.spread_preset;
  const bool suppress = config.suppression_policy != SuppressionPolicy::none;
  const bool observe = config.surveillance_enabled && !config.perfect_information;

  for (int t = 0; t < tl.horizon; ++t) {
    EpisodeRow row;
    row.t = t;

    // Drop decisions use the belief as of the end of the previous minute.
    DropChoice primary_drop, secondary_drop;
    if (tl.is_drop_minute(t)) {
      row.suppression_step = true;
      log.ring_history.add(t, ring_radius(belief.burning, scenario.origin));
      latch.update(log.ring_history, t, config.dispatch, tl.horizon);
      if (suppress) primary_drop = choose_drop(config.suppression_policy, belief, estimated_fuel, scenario, config,
                                               params, t, primary);
    }
    if (suppress && latch.dispatched()) {
      const int phase = t - tl.manned_arrival - tl.second_aircraft_offset();
      if (t > *latch.minute() && phase >= 0 && phase % tl.k == 0) {
        secondary_drop = choose_drop(config.suppression_policy, belief, estimated_fuel, scenario, config, params, t,
                                     secondary);
      }
    }

    // Drones plan with knowledge of the pending drop, then move.
    if (observe && t >= tl.uav_arrival) {
      if (!drones) drones = config.drone_start;
      SurveillanceOptions options;
      options.penalties = config.penalties;
      options.ranging = config.ranging;
      options.propagation = params;
      options.minute = t;
      options.estimated_fuel = &estimated_fuel;
      const DropChoice pending = primary_drop ? primary_drop : secondary_drop;
      const SurveillanceAction e = plan_surveillance(belief, *drones, scenario, pending, config.surveillance_kind,
                                                     config.surveillance_mcts, surveillance_rng, options);
      drones = apply_action(*drones, e);
    }

    // Believed-burning cells spend fuel in the planner's estimate.
    for (int i = 0; i < kCellCount; ++i) {
      if (belief.burning.flat(i)) estimated_fuel.flat(i) = std::max(0, estimated_fuel.flat(i) - params.alpha);
    }

    SuppressionOutcome outcome;
    for (const auto* drop : {&primary_drop, &secondary_drop}) {
      if (!*drop) continue;
      row.drops.push_back(**drop);
      ++log.drop_count;
      const SuppressionOutcome o = footprint(**drop, config.templates);
      outcome = outcome.empty() ? o : SuppressionOutcome::merged(outcome, o);
    }
    world = step(world, outcome.empty() ? nullptr : &outcome, params, kernels, world_rng);
    if (!outcome.empty()) {
      // Suppression is assured inside F_T.
      for (auto c : outcome.full_set) {
        belief.burning[c] = 0;
        estimated_fuel[c] = std::max(0, estimated_fuel[c] - params.gamma_full);
      }
      for (auto c : outcome.partial_set) estimated_fuel[c] = std::max(0, estimated_fuel[c] - params.gamma_partial);
    }

    std::vector<CellIndex> observed;
    if (config.perfect_information) {
      belief.burning = world.burning;
      belief.uncertainty.fill(0.0);
    } else {
      if (drones) {
        const ObservationBatch obs = ranging(*drones, world, ranging_rng, config.ranging);
        belief = update_belief(std::move(belief), obs);
        observed = obs.cells();
      }
      belief = increment_uncertainty(std::move(belief), observed);
    }

    for (int i = 0; i < kCellCount; ++i) {
      if (world.burning.flat(i) && !ever_burned.flat(i)) {
        ever_burned.flat(i) = 1;
        destruction += 1.0 + scenario.resources.flat(i);
      }
    }
    row.burning_count = burning_count(world.burning);
    row.destruction = destruction;
    row.ring_radius_m = ring_radius(world.burning, scenario.origin);
    row.drones = drones;
    row.dispatched = latch.dispatched();
    row.burning_accuracy = jaccard(belief.burning, world.burning);
    row.belief_accuracy = agreement(belief.burning, world.burning);
    log.rows.push_back(std::move(row));

    if (touches_boundary(world.burning)) {
      log.reached_boundary = true;
      if (config.stop_at_boundary) break;
    }
  }
  log.dispatch_minute = latch.minute();
  log.outcome = classify_outcome(log);
  return log;
}

}  // namespace wildfire
