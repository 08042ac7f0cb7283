#include "wildfire/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace wildfire {

namespace {

bool contains(const std::vector<CellIndex>& cells, CellIndex x) {
  return std::find(cells.begin(), cells.end(), x) != cells.end();
}

// Neighbour direction index for xp relative to x, or -1.
int direction_of(CellIndex x, CellIndex xp) {
  const int dr = xp.row() - x.row();
  const int dc = xp.col() - x.col();
  for (int d = 0; d < 8; ++d) {
    if (kMooreOffsets[d][0] == dr && kMooreOffsets[d][1] == dc) return d;
  }
  return -1;
}

double directional_prob(const PropagationParams& params, const WindPhase& wind, double elev_x, double elev_xp,
                        int dir) {
  // Spread runs from x' = x + offset toward x, i.e. along -offset.
  const double sx = -kMooreOffsets[dir][1];
  const double sy = -kMooreOffsets[dir][0];
  const double len = std::hypot(sx, sy);
  // Wind heading in grid coordinates (y grows south).
  const double wx = std::cos(wind.direction);
  const double wy = -std::sin(wind.direction);
  const double alignment = wind.strength * (wx * sx + wy * sy) / len;
  const double slope = (elev_x - elev_xp) / (kCellMeters * len);
  const double p = params.p0 * (1.0 + params.wind_bias * alignment) * (1.0 + params.slope_bias * slope);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

void PropagationParams::validate() const {
  require(alpha >= 1, "alpha must be at least 1");
  require(p0 > 0.0 && p0 < 1.0, "p0 must lie in (0,1)");
  require(p_partial >= 0.0 && p_partial <= 1.0, "p_partial must lie in [0,1]");
  require(gamma_full >= gamma_partial && gamma_partial >= 0, "need gamma_full >= gamma_partial >= 0");
}

PropagationParams PropagationParams::defaults_for(const Scenario& scenario) {
  PropagationParams params;
  params.p0 = spread_p0(scenario.spread_preset);
  params.gamma_partial = params.alpha;
  params.gamma_full = std::max(params.gamma_partial, scenario.max_initial_fuel());
  return params;
}

double spread_p0(SpreadPreset preset) {
  // Output of `wildfire calibrate --runs 40 --tolerance 0.005` on case 1:
  // unsuppressed burned fraction at t = 120 of 0.05 / 0.25 / 0.50 / 0.85.
  switch (preset) {
    case SpreadPreset::slow: return 0.0282891;
    case SpreadPreset::moderate: return 0.0477812;
    case SpreadPreset::rapid: return 0.0687354;
    case SpreadPreset::ultrarapid: return 0.103334;
  }
  return 0.0477812;
}

SuppressionOutcome SuppressionOutcome::merged(const SuppressionOutcome& a, const SuppressionOutcome& b) {
  SuppressionOutcome out;
  out.full_set = a.full_set;
  for (auto c : b.full_set) {
    if (!contains(out.full_set, c)) out.full_set.push_back(c);
  }
  for (const auto* src : {&a.partial_set, &b.partial_set}) {
    for (auto c : *src) {
      if (!contains(out.full_set, c) && !contains(out.partial_set, c)) out.partial_set.push_back(c);
    }
  }
  return out;
}

SuppressionMask::SuppressionMask(const SuppressionOutcome& outcome) {
  if (outcome.empty()) return;
  roles_.assign(kCellCount, 0);
  auto mark = [&](CellIndex c, SuppressionRole role) {
    roles_[c.flat()] = static_cast<std::uint8_t>(role);
    min_row = std::min(min_row, c.row());
    max_row = std::max(max_row, c.row());
    min_col = std::min(min_col, c.col());
    max_col = std::max(max_col, c.col());
  };
  for (auto c : outcome.partial_set) mark(c, SuppressionRole::partial);
  for (auto c : outcome.full_set) mark(c, SuppressionRole::full);
}

double neighbor_ignition_prob(CellIndex x, CellIndex xp, const PropagationParams& params, const WindPhase& wind,
                              const RealGrid& elevation) {
  const int dir = direction_of(x, xp);
  if (dir < 0) throw ContractViolation("neighbor_ignition_prob: cells are not adjacent");
  return directional_prob(params, wind, elevation[x], elevation[xp], dir);
}

IgnitionKernel::IgnitionKernel(const RealGrid& elevation, const PropagationParams& params, const WindPhase& wind)
    : probs_(static_cast<std::size_t>(kCellCount) * 8, 0.0) {
  for (int r = 0; r < kGridSize; ++r) {
    for (int c = 0; c < kGridSize; ++c) {
      const int flat = r * kGridSize + c;
      for (int d = 0; d < 8; ++d) {
        const int nr = r + kMooreOffsets[d][0];
        const int nc = c + kMooreOffsets[d][1];
        if (!in_bounds(nr, nc)) continue;
        probs_[static_cast<std::size_t>(flat) * 8 + d] =
            directional_prob(params, wind, elevation.at(r, c), elevation.at(nr, nc), d);
      }
    }
  }
}

KernelSet::KernelSet(const Scenario& scenario, const PropagationParams& params)
    : phases_(scenario.wind), params_(params) {
  kernels_.reserve(scenario.wind.size());
  for (const auto& phase : scenario.wind) kernels_.emplace_back(scenario.elevation, params, phase);
}

const IgnitionKernel& KernelSet::at_minute(int minute) const {
  std::size_t i = 0;
  while (i + 1 < phases_.size() && phases_[i].switch_time && minute >= *phases_[i].switch_time) ++i;
  return kernels_[i];
}

double suppression_delta(CellIndex x, const SuppressionOutcome* suppression, const PropagationParams& params,
                         bool is_suppression_step) {
  if (!is_suppression_step || suppression == nullptr) return 1.0;
  if (contains(suppression->full_set, x)) return 0.0;
  if (contains(suppression->partial_set, x)) return params.p_partial;
  return 1.0;
}

double ignition_probability(CellIndex x, const BoolGrid& burning, const FuelGrid& fuel,
                            const SuppressionOutcome* suppression, const PropagationParams& params,
                            bool is_suppression_step, const IgnitionKernel& kernel) {
  if (fuel[x] <= 0) return 0.0;
  const double delta = suppression_delta(x, suppression, params, is_suppression_step);
  if (burning[x]) return delta;
  double no_ignition = 1.0;
  for (int d = 0; d < 8; ++d) {
    const int nr = x.row() + kMooreOffsets[d][0];
    const int nc = x.col() + kMooreOffsets[d][1];
    if (!in_bounds(nr, nc) || !burning.at(nr, nc)) continue;
    no_ignition *= 1.0 - kernel.prob(x.flat(), d);
  }
  return delta * (1.0 - no_ignition);
}

int suppression_beta(CellIndex x, const SuppressionOutcome* suppression, const PropagationParams& params,
                     bool is_suppression_step) {
  if (!is_suppression_step || suppression == nullptr) return 0;
  if (contains(suppression->full_set, x)) return params.gamma_full;
  if (contains(suppression->partial_set, x)) return params.gamma_partial;
  return 0;
}

int fuel_update(CellIndex x, const BoolGrid& burning, const FuelGrid& fuel, const SuppressionOutcome* suppression,
                const PropagationParams& params, bool is_suppression_step) {
  const int beta = suppression_beta(x, suppression, params, is_suppression_step);
  const int spent = burning[x] ? params.alpha : 0;
  return std::max(0, fuel[x] - spent - beta);
}

void advance_in_place(BoolGrid& burning, FuelGrid& fuel, const IgnitionKernel& kernel,
                      const PropagationParams& params, const SuppressionMask& mask, std::uint64_t key,
                      BoolGrid& scratch) {
  int min_r = kGridSize, max_r = -1, min_c = kGridSize, max_c = -1;
  for (int r = 0; r < kGridSize; ++r) {
    const std::uint8_t* row = &burning.at(r, 0);
    if (std::memchr(row, 1, kGridSize) == nullptr) continue;
    min_r = std::min(min_r, r);
    max_r = r;
    for (int c = 0; c < kGridSize; ++c) {
      if (row[c]) {
        min_c = std::min(min_c, c);
        max_c = std::max(max_c, c);
      }
    }
  }
  if (max_r >= 0) {
    min_r = std::max(0, min_r - 1);
    max_r = std::min(kGridSize - 1, max_r + 1);
    min_c = std::max(0, min_c - 1);
    max_c = std::min(kGridSize - 1, max_c + 1);
  }
  if (!mask.empty()) {
    min_r = std::min(min_r, mask.min_row);
    max_r = std::max(max_r, mask.max_row);
    min_c = std::min(min_c, mask.min_col);
    max_c = std::max(max_c, mask.max_col);
  }
  if (max_r < 0) return;

  std::memcpy(scratch.values().data(), burning.values().data(), kCellCount);
  const BoolGrid& prev = scratch;
  for (int r = min_r; r <= max_r; ++r) {
    for (int c = min_c; c <= max_c; ++c) {
      const int i = r * kGridSize + c;
      const int f = fuel.flat(i);
      const bool was_burning = prev.flat(i) != 0;
      const SuppressionRole role = mask.role_flat(i);
      int beta = 0;
      double delta = 1.0;
      if (role == SuppressionRole::full) {
        beta = params.gamma_full;
        delta = 0.0;
      } else if (role == SuppressionRole::partial) {
        beta = params.gamma_partial;
        delta = params.p_partial;
      }
      bool next = false;
      if (f > 0) {
        if (was_burning) {
          next = delta >= 1.0 || (delta > 0.0 && counter_uniform(key, static_cast<std::uint64_t>(i)) < delta);
        } else if (delta > 0.0) {
          double no_ignition = 1.0;
          bool exposed = false;
          for (int d = 0; d < 8; ++d) {
            const int nr = r + kMooreOffsets[d][0];
            const int nc = c + kMooreOffsets[d][1];
            if (!in_bounds(nr, nc) || !prev.at(nr, nc)) continue;
            exposed = true;
            no_ignition *= 1.0 - kernel.prob(i, d);
          }
          if (exposed) {
            const double p = delta * (1.0 - no_ignition);
            next = counter_uniform(key, static_cast<std::uint64_t>(i)) < p;
          }
        }
      }
      burning.flat(i) = next ? 1 : 0;
      fuel.flat(i) = std::max(0, f - (was_burning ? params.alpha : 0) - beta);
    }
  }
}

WorldState step(const WorldState& world, const SuppressionOutcome* suppression, const PropagationParams& params,
                const KernelSet& kernels, Rng& rng) {
  WorldState next = world;
  const SuppressionMask mask = suppression ? SuppressionMask(*suppression) : SuppressionMask();
  BoolGrid scratch;
  const std::uint64_t key = rng.next();
  advance_in_place(next.burning, next.fuel, kernels.at_minute(world.clock), params, mask, key, scratch);
  next.clock = world.clock + 1;
  return next;
}

WorldState step(const WorldState& world, const SuppressionOutcome* suppression, const PropagationParams& params,
                const Scenario& scenario, Rng& rng) {
  return step(world, suppression, params, KernelSet(scenario, params), rng);
}

InternalModel::InternalModel(const Scenario& scenario, const PropagationParams& params, int minute)
    : params_(params),
      kernel_(scenario.elevation, params, scenario.wind_at(minute)),
      assumed_fuel_(scenario.median_initial_fuel()) {}

void InternalModel::advance(BoolGrid& burning, FuelGrid& fuel, int steps, std::uint64_t key) const {
  const SuppressionMask none;
  for (int s = 0; s < steps; ++s) {
    advance_in_place(burning, fuel, kernel_, params_, none, hash_combine(key, static_cast<std::uint64_t>(s)),
                     scratch_);
  }
}

BoolGrid propagate_internal(const BoolGrid& belief, int depth, const Scenario& scenario,
                            const PropagationParams& params, Rng& rng, int minute) {
  require(depth >= 0, "propagate_internal: depth must be non-negative");
  BoolGrid burning = belief;
  if (depth == 0) return burning;
  const InternalModel model(scenario, params, minute);
  FuelGrid fuel = model.uniform_fuel();
  model.advance(burning, fuel, depth, rng.next());
  return burning;
}

BoolGrid propagate_internal(const BoolGrid& belief, const FuelGrid& assumed_fuel, int depth, const Scenario& scenario,
                            const PropagationParams& params, Rng& rng, int minute) {
  require(depth >= 0, "propagate_internal: depth must be non-negative");
  BoolGrid burning = belief;
  if (depth == 0) return burning;
  const InternalModel model(scenario, params, minute);
  FuelGrid fuel = assumed_fuel;
  model.advance(burning, fuel, depth, rng.next());
  return burning;
}

}  // namespace wildfire
