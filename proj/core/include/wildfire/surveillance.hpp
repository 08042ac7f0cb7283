#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wildfire/drops.hpp"
#include "wildfire/grid.hpp"
#include "wildfire/mcts.hpp"
#include "wildfire/propagation.hpp"
#include "wildfire/uav.hpp"

namespace wildfire {

enum class SurveillanceModelKind { uncertainty, belief_baseline };

std::string to_string(SurveillanceModelKind kind);
SurveillanceModelKind parse_surveillance_kind(const std::string& text);

/// Defaults: gamma 0.95, depth 3, c 100, 1000 iterations.
inline MctsConfig default_surveillance_mcts() { return MctsConfig{0.95, 100.0, 3, 1000, std::nullopt, true}; }

/// Everything the surveillance model needs besides the belief and drones.
struct SurveillanceOptions {
  PenaltyParams penalties;
  RangingParams ranging;
  std::optional<PropagationParams> propagation;  // defaults_for(scenario) when empty
  int minute = 0;                                // selects the wind phase
  const FuelGrid* estimated_fuel = nullptr;      // uniform median fuel when null
};

/// tau1 times the number of observations that disagree with the prior belief.
double belief_baseline_reward(const ObservationBatch& obs, const BoolGrid& prior_belief, double tau1 = 1.0);

/// Generative surveillance model. The believed fire is propagated once per
/// depth before search; a state only records which cells the drones have
/// observed along its action path.
class SurveillanceModel {
 public:
  struct State {
    SurveillanceState drones;
    int depth = 0;
    std::vector<std::pair<int, int>> observed;  // (flat cell, depth of observation)
  };
  using Action = SurveillanceAction;

  SurveillanceModel(const BeliefState& belief, const Scenario& scenario, std::optional<SuppressionActionSpec> pending_drop,
                    SurveillanceModelKind kind, int max_depth, const SurveillanceOptions& options, Rng& rng);

  std::vector<Action> legal_actions(const State& s) const { return wildfire::legal_actions(s.drones); }
  bool is_terminal(const State&) const { return false; }
  double advance(State& s, const Action& a, Rng& rng) const;
  std::pair<State, double> sample_transition(const State& s, const Action& a, Rng& rng) const;

  /// Believed fire at the given search depth (0 is the current belief).
  const BoolGrid& layer(int depth) const { return layers_.at(static_cast<std::size_t>(depth)); }
  /// Uncertainty a cell would carry at search depth d given where the path
  /// last observed it (-1 for never).
  double uncertainty_at(int flat, int depth, int last_observed) const;
  const AxisOfAdvance* aoa() const { return aoa_ ? &*aoa_ : nullptr; }

 private:
  CellIndex origin_;
  SurveillanceModelKind kind_;
  SurveillanceOptions options_;
  std::optional<AxisOfAdvance> aoa_;
  std::vector<BoolGrid> layers_;
  std::vector<RealGrid> growth_;
  std::vector<RealGrid> unobserved_;  // cumulative uncertainty with no path observation
  mutable std::vector<int> last_seen_;
  mutable std::vector<int> cells_;
};

SurveillanceAction plan_surveillance(const BeliefState& belief, const SurveillanceState& s, const Scenario& scenario,
                                     const std::optional<SuppressionActionSpec>& pending_drop,
                                     SurveillanceModelKind kind, const MctsConfig& mcts_cfg, Rng& rng,
                                     const SurveillanceOptions& options = {});

}  // namespace wildfire
