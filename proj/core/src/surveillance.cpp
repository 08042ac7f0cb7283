#include "wildfire/surveillance.hpp"

#include <algorithm>

namespace wildfire {

std::string to_string(SurveillanceModelKind kind) {
  return kind == SurveillanceModelKind::uncertainty ? "uncertainty" : "belief";
}

SurveillanceModelKind parse_surveillance_kind(const std::string& text) {
  if (text == "uncertainty") return SurveillanceModelKind::uncertainty;
  if (text == "belief" || text == "belief_baseline") return SurveillanceModelKind::belief_baseline;
  throw ConfigError("unknown surveillance model '" + text + "'");
}

double belief_baseline_reward(const ObservationBatch& obs, const BoolGrid& prior_belief, double tau1) {
  int changed = 0;
  for (const auto& entry : obs.entries()) {
    if (entry.burning != (prior_belief[entry.cell] != 0)) ++changed;
  }
  return tau1 * changed;
}

SurveillanceModel::SurveillanceModel(const BeliefState& belief, const Scenario& scenario,
                                     std::optional<SuppressionActionSpec> pending_drop, SurveillanceModelKind kind,
                                     int max_depth, const SurveillanceOptions& options, Rng& rng)
    : origin_(scenario.origin),
      kind_(kind),
      options_(options),
      last_seen_(kCellCount, -1) {
  require(max_depth >= 1, "surveillance model needs max_depth >= 1");
  if (pending_drop) aoa_ = axis_of_advance(*pending_drop, scenario.water_source);

  const PropagationParams params = options.propagation.value_or(PropagationParams::defaults_for(scenario));
  const InternalModel internal(scenario, params, options.minute);
  FuelGrid fuel = options.estimated_fuel ? *options.estimated_fuel : internal.uniform_fuel();
  layers_.reserve(static_cast<std::size_t>(max_depth) + 1);
  layers_.push_back(belief.burning);
  for (int d = 0; d < max_depth; ++d) {
    BoolGrid next = layers_.back();
    internal.advance(next, fuel, 1, rng.next());
    layers_.push_back(std::move(next));
  }
  if (kind_ == SurveillanceModelKind::uncertainty) {
    unobserved_.push_back(belief.uncertainty);
    for (int d = 0; d < max_depth; ++d) {
      growth_.push_back(uncertainty_growth(layers_[static_cast<std::size_t>(d)]));
      RealGrid cum = unobserved_.back();
      for (int i = 0; i < kCellCount; ++i) cum.flat(i) = std::min(1.0, cum.flat(i) + growth_.back().flat(i));
      unobserved_.push_back(std::move(cum));
    }
  }
}

double SurveillanceModel::uncertainty_at(int flat, int depth, int last_observed) const {
  if (last_observed < 0) return unobserved_[static_cast<std::size_t>(depth)].flat(flat);
  double u = 0.0;
  for (int i = last_observed + 1; i < depth; ++i) u += growth_[static_cast<std::size_t>(i)].flat(flat);
  return std::min(1.0, u);
}

double SurveillanceModel::advance(State& s, const Action& a, Rng& rng) const {
  s.drones = apply_action(s.drones, a);
  const int d = s.depth;
  ranging_cells(s.drones, rng, options_.ranging, cells_);

  for (const auto& [flat, depth] : s.observed) last_seen_[flat] = std::max(last_seen_[flat], depth);
  double gain = 0.0;
  if (kind_ == SurveillanceModelKind::uncertainty) {
    for (int flat : cells_) gain += uncertainty_at(flat, d, last_seen_[flat]);
  } else {
    const BoolGrid& now = layers_[static_cast<std::size_t>(d) + 1];
    const BoolGrid& before = layers_[0];
    int changed = 0;
    for (int flat : cells_) {
      const int j = last_seen_[flat];
      const std::uint8_t prior = j < 0 ? before.flat(flat) : layers_[static_cast<std::size_t>(j) + 1].flat(flat);
      if ((now.flat(flat) != 0) != (prior != 0)) ++changed;
    }
    gain = changed;
  }
  for (const auto& [flat, depth] : s.observed) last_seen_[flat] = -1;

  for (int flat : cells_) s.observed.emplace_back(flat, d);
  s.depth = d + 1;
  return options_.penalties.tau1 * gain - surveillance_penalties(s.drones, aoa(), origin_, options_.penalties).total();
}

std::pair<SurveillanceModel::State, double> SurveillanceModel::sample_transition(const State& s, const Action& a,
                                                                                 Rng& rng) const {
  State next = s;
  const double reward = advance(next, a, rng);
  return {std::move(next), reward};
}

SurveillanceAction plan_surveillance(const BeliefState& belief, const SurveillanceState& s, const Scenario& scenario,
                                     const std::optional<SuppressionActionSpec>& pending_drop,
                                     SurveillanceModelKind kind, const MctsConfig& mcts_cfg, Rng& rng,
                                     const SurveillanceOptions& options) {
  require(s.valid(), "plan_surveillance: invalid surveillance state");
  const SurveillanceModel model(belief, scenario, pending_drop, kind, mcts_cfg.max_depth, options, rng);
  SurveillanceModel::State root{s, 0, {}};
  return search(model, root, mcts_cfg, rng);
}

}  // namespace wildfire
