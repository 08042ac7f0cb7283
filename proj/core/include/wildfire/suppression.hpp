#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wildfire/drops.hpp"
#include "wildfire/grid.hpp"
#include "wildfire/mcts.hpp"
#include "wildfire/propagation.hpp"

namespace wildfire {

enum class SuppressionRewardKind { localized, global, immediate };

std::string to_string(SuppressionRewardKind kind);
SuppressionRewardKind parse_reward_kind(const std::string& text);

/// A planned drop; std::nullopt is the no-op used when nothing can be targeted.
using DropChoice = std::optional<SuppressionActionSpec>;

struct SuppressPlannerConfig {
  int asr_method = 2;
  double quantile = 90.0;  // percent
  int rollout = 10;        // RO, internal steps per search depth
  SuppressionRewardKind reward = SuppressionRewardKind::localized;
  MctsConfig mcts{0.95, 100.0, 2, 1000, std::nullopt, true};

  void validate() const;
};

/// Planner inputs beyond the belief and configuration.
struct SuppressionOptions {
  std::optional<PropagationParams> propagation;  // defaults_for(scenario) when empty
  int minute = 0;                                // selects the wind phase
  const FuelGrid* estimated_fuel = nullptr;      // uniform median fuel when null
  const TemplateSet* templates = nullptr;        // default templates when null
};

/// Square of cells centred on a drop; half_width = RO.
struct LocalWindow {
  CellIndex center;
  int half_width = 0;

  bool contains(int row, int col) const {
    return std::abs(row - center.row()) <= half_width && std::abs(col - center.col()) <= half_width;
  }
  /// Sum of (1 + R) over burning cells inside the window.
  double destruction(const BoolGrid& burning, const RealGrid& resources) const;
};

/// Bearing-free "head" of a fire: centroid (row, col) of the top decile of
/// burning cells by distance from origin. Empty when nothing burns.
std::optional<std::pair<double, double>> fire_head(const BoolGrid& burning, CellIndex origin);

/// Candidate drop centres for one ASR method, without fallback, sorted by
/// flat index. Method 2 keeps ceil(n (1 - Q/100)) of the n burning cells,
/// farthest from origin first with ties to the lower index.
std::vector<CellIndex> asr_centers(const BoolGrid& belief, int method, double quantile, const Scenario& scenario);

/// Restricted action set with fallback to less restrictive methods. Empty
/// only when nothing is believed to burn. Sorted by action index.
std::vector<SuppressionActionSpec> asr(const BoolGrid& belief, int method, double quantile, const Scenario& scenario);

/// Localized reward with common random numbers: both rollouts share `key`.
double localized_reward(const BoolGrid& belief, const FuelGrid& fuel, const SuppressionActionSpec& a,
                        const Scenario& scenario, const PropagationParams& params, int rollout, std::uint64_t key,
                        const TemplateSet& templates, int minute = 0);
double localized_reward(const BoolGrid& belief, const SuppressionActionSpec& a, const Scenario& scenario,
                        const PropagationParams& params, int rollout, Rng& rng);

/// Destruction over the whole grid after suppressing and rolling out. A null
/// action rolls out without suppression.
double global_penalty(const BoolGrid& belief, const FuelGrid& fuel, const DropChoice& a, const Scenario& scenario,
                      const PropagationParams& params, int rollout, std::uint64_t key, const TemplateSet& templates,
                      int minute = 0);
double global_penalty(const BoolGrid& belief, const DropChoice& a, const Scenario& scenario,
                      const PropagationParams& params, int rollout, Rng& rng);

/// Expected number of believed-burning cells a drop clears.
double expected_cells_cleared(const BoolGrid& belief, const SuppressionActionSpec& a, const PropagationParams& params,
                              const TemplateSet& templates);

/// Generative suppression model: each depth applies a drop and rolls the
/// belief forward RO internal steps.
class SuppressionModel {
 public:
  struct State {
    BoolGrid burning;
    FuelGrid fuel;
    int depth = 0;
  };
  using Action = DropChoice;

  SuppressionModel(const Scenario& scenario, const SuppressPlannerConfig& cfg, const PropagationParams& params,
                   const TemplateSet& templates, int minute);

  std::vector<Action> legal_actions(const State& s) const;
  bool is_terminal(const State&) const { return false; }
  double advance(State& s, const Action& a, Rng& rng) const;
  std::pair<State, double> sample_transition(const State& s, const Action& a, Rng& rng) const;

 private:
  const Scenario& scenario_;
  SuppressPlannerConfig cfg_;
  PropagationParams params_;
  const TemplateSet& templates_;
  InternalModel internal_;
};

DropChoice plan_suppression(const BeliefState& belief, const Scenario& scenario, const SuppressPlannerConfig& cfg,
                            Rng& rng, const SuppressionOptions& options = {});

/// State of the rule-based firefighting technique across one episode.
struct TechniqueMemory {
  bool initialized = false;
  std::vector<SuppressionActionSpec> wet_line;  // planned wet-line drops in order
  std::size_t next = 0;

  bool wet_line_done() const { return initialized && next >= wet_line.size(); }
};

/// High-value areas: 4-connected components of cells with R >= half of the
/// maximum R. Empty when the grid holds no resources.
std::vector<std::vector<CellIndex>> high_value_areas(const RealGrid& resources);

/// True when the coefficient of variation of R over the grid exceeds 0.5.
bool resources_uneven(const RealGrid& resources);

/// Line drops forming a wet-line one cell outside the bounding box of an
/// area. Sides nearest to `fire_point` come first.
std::vector<SuppressionActionSpec> wet_line_drops(const std::vector<CellIndex>& area, std::pair<double, double> fire_point);

/// Line type whose orientation is most nearly perpendicular to a (drow, dcol)
/// heading.
DropType perpendicular_line(double drow, double dcol);

DropChoice firefighting_technique(const BoolGrid& belief, const Scenario& scenario, TechniqueMemory& memory);

}  // namespace wildfire
