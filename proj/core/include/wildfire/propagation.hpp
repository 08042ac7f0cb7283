#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "wildfire/grid.hpp"
#include "wildfire/rng.hpp"

namespace wildfire {

/// Moore neighbourhood offsets (drow, dcol).
inline constexpr std::array<std::array<int, 2>, 8> kMooreOffsets{{
    {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}}};

struct PropagationParams {
  int alpha = 1;              // fuel spent per burning step
  double p0 = 0.05;           // base neighbour ignition probability
  double p_partial = 0.5;     // ignition multiplier inside a partial footprint
  int gamma_full = 12;        // fuel removed by full suppression
  int gamma_partial = 1;      // fuel removed by partial suppression
  double wind_bias = 0.5;     // lambda_w
  double slope_bias = 1.0;    // lambda_e

  void validate() const;

  /// Documented defaults: gamma_full is the scenario's maximum initial fuel
  /// so a full drop removes all remaining risk; p0 comes from the preset.
  static PropagationParams defaults_for(const Scenario& scenario);

  friend bool operator==(const PropagationParams&, const PropagationParams&) = default;
};

/// Base ignition probability for a spread preset (calibrated on case 1).
double spread_p0(SpreadPreset preset);

/// Cells touched by a drop: F_T and P_T. Disjoint and in-bounds.
struct SuppressionOutcome {
  std::vector<CellIndex> full_set;
  std::vector<CellIndex> partial_set;

  bool empty() const { return full_set.empty() && partial_set.empty(); }
  /// Union of two drops landing on the same step. Full wins over partial.
  static SuppressionOutcome merged(const SuppressionOutcome& a, const SuppressionOutcome& b);
};

enum class SuppressionRole : std::uint8_t { none = 0, full = 1, partial = 2 };

/// Per-cell role lookup built from an outcome.
class SuppressionMask {
 public:
  SuppressionMask() = default;
  explicit SuppressionMask(const SuppressionOutcome& outcome);

  SuppressionRole role(CellIndex c) const {
    return roles_.empty() ? SuppressionRole::none : static_cast<SuppressionRole>(roles_[c.flat()]);
  }
  SuppressionRole role_flat(int i) const {
    return roles_.empty() ? SuppressionRole::none : static_cast<SuppressionRole>(roles_[i]);
  }
  bool empty() const { return roles_.empty(); }
  /// Bounding box of the footprint, inclusive; meaningless when empty().
  int min_row = kGridSize, max_row = -1, min_col = kGridSize, max_col = -1;

 private:
  std::vector<std::uint8_t> roles_;
};

/// p(x, x') for x' one of the 8 neighbours of x.
double neighbor_ignition_prob(CellIndex x, CellIndex xp, const PropagationParams& params,
                              const WindPhase& wind, const RealGrid& elevation);

/// Precomputed p(x, x') for every cell and direction under one wind phase.
class IgnitionKernel {
 public:
  IgnitionKernel(const RealGrid& elevation, const PropagationParams& params, const WindPhase& wind);

  /// Probability that the neighbour at x + kMooreOffsets[dir] ignites x.
  double prob(int flat_cell, int dir) const { return probs_[static_cast<std::size_t>(flat_cell) * 8 + dir]; }

 private:
  std::vector<double> probs_;
};

/// One kernel per wind phase of a scenario.
class KernelSet {
 public:
  KernelSet(const Scenario& scenario, const PropagationParams& params);
  const IgnitionKernel& at_minute(int minute) const;
  const PropagationParams& params() const { return params_; }

 private:
  std::vector<WindPhase> phases_;
  PropagationParams params_;
  std::vector<IgnitionKernel> kernels_;
};

/// delta(x) of the suppression step.
double suppression_delta(CellIndex x, const SuppressionOutcome* suppression, const PropagationParams& params,
                         bool is_suppression_step);

/// P(x): probability that x burns at t+1.
double ignition_probability(CellIndex x, const BoolGrid& burning, const FuelGrid& fuel,
                            const SuppressionOutcome* suppression, const PropagationParams& params,
                            bool is_suppression_step, const IgnitionKernel& kernel);

/// beta(x): fuel removed by suppression this step.
int suppression_beta(CellIndex x, const SuppressionOutcome* suppression, const PropagationParams& params,
                     bool is_suppression_step);

/// F_{t+1}(x).
int fuel_update(CellIndex x, const BoolGrid& burning, const FuelGrid& fuel, const SuppressionOutcome* suppression,
                const PropagationParams& params, bool is_suppression_step);

/// Advances burning/fuel one minute in place. Per-cell draws come from
/// counter_uniform(key, cell), so results do not depend on visiting order.
/// scratch is reused storage for the previous burning grid.
void advance_in_place(BoolGrid& burning, FuelGrid& fuel, const IgnitionKernel& kernel,
                      const PropagationParams& params, const SuppressionMask& mask, std::uint64_t key,
                      BoolGrid& scratch);

/// One surveillance time step of the true world. A non-null suppression marks
/// this step as a suppression step.
WorldState step(const WorldState& world, const SuppressionOutcome* suppression, const PropagationParams& params,
                const KernelSet& kernels, Rng& rng);
WorldState step(const WorldState& world, const SuppressionOutcome* suppression, const PropagationParams& params,
                const Scenario& scenario, Rng& rng);

/// Limited-information model used inside planners: wind and elevation are
/// known, fuel is an assumed grid (uniform median fuel unless the caller
/// tracks a better estimate).
class InternalModel {
 public:
  InternalModel(const Scenario& scenario, const PropagationParams& params, int minute);

  const PropagationParams& params() const { return params_; }
  int assumed_fuel() const { return assumed_fuel_; }
  FuelGrid uniform_fuel() const { return FuelGrid(assumed_fuel_); }

  /// Rolls (burning, fuel) forward `steps` minutes. Draws for step i use
  /// hash_combine(key, i), so two calls with the same key share randomness.
  void advance(BoolGrid& burning, FuelGrid& fuel, int steps, std::uint64_t key) const;

 private:
  PropagationParams params_;
  IgnitionKernel kernel_;
  int assumed_fuel_;
  mutable BoolGrid scratch_;
};

/// Rolls a belief grid forward depth steps under the internal model.
BoolGrid propagate_internal(const BoolGrid& belief, int depth, const Scenario& scenario,
                            const PropagationParams& params, Rng& rng, int minute = 0);
/// Same, starting from a caller-tracked fuel estimate instead of the uniform
/// assumption.
BoolGrid propagate_internal(const BoolGrid& belief, const FuelGrid& assumed_fuel, int depth, const Scenario& scenario,
                            const PropagationParams& params, Rng& rng, int minute = 0);

}  // namespace wildfire
